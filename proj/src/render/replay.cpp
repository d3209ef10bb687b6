#include "tc/render/replay.hpp"

#include <array>
#include <cmath>

namespace tc {
namespace {

constexpr Rgb kFree{250, 250, 250};
constexpr Rgb kWall{60, 60, 60};
constexpr Rgb kLow{175, 175, 175};
constexpr Rgb kFurniture{150, 110, 70};
constexpr Rgb kGoalZone{200, 240, 200};
constexpr Rgb kGoalFurniture{60, 150, 60};
constexpr Rgb kTarget{220, 140, 0};
constexpr Rgb kContainer{140, 60, 160};

struct Painter {
  const World& scene;
  Image& img;
  int scale;

  int px(double x) const { return static_cast<int>(std::floor(x / kCellSize * scale)); }
  int py(double y) const { return img.height() - 1 - static_cast<int>(std::floor(y / kCellSize * scale)); }

  void cell(Cell c, Rgb color) const {
    const int x0 = c.x * scale;
    const int y0 = img.height() - (c.y + 1) * scale;
    img.fill_rect(x0, y0, x0 + scale, y0 + scale, color);
  }
};

}  // namespace

Rgb trace_color(std::size_t i) {
  static constexpr std::array<Rgb, 6> palette = {
      Rgb{30, 90, 220}, Rgb{220, 40, 40}, Rgb{20, 160, 160}, Rgb{230, 120, 20}, Rgb{120, 40, 200}, Rgb{90, 90, 20}};
  return palette[i % palette.size()];
}

Image render_trajectory(const World& scene, const std::vector<Trace>& traces, const RenderStyle& style) {
  if (style.scale <= 0) throw std::invalid_argument("render scale must be positive");
  for (const auto& t : traces) {
    if (t.header.scene_id != scene.scene_id())
      throw ReplayError("trace for scene '" + t.header.scene_id + "' does not match scene '" + scene.scene_id() + "'");
  }
  const auto& grid = scene.grid();
  Image img(grid.width() * style.scale, grid.height() * style.scale, kFree);
  Painter p{scene, img, style.scale};

  for (int y = 0; y < grid.height(); ++y)
    for (int x = 0; x < grid.width(); ++x) {
      const Cell c{x, y};
      if (scene.in_goal_zone(c)) p.cell(c, kGoalZone);
      switch (grid.terrain(c)) {
        case Terrain::OccupiedHeavy: p.cell(c, kWall); break;
        case Terrain::OccupiedLight: p.cell(c, kLow); break;
        case Terrain::Furniture: p.cell(c, kFurniture); break;
        case Terrain::Free: break;
      }
    }
  for (const auto& o : scene.objects()) {
    if (!o.footprint) continue;
    const Rgb color = o.id == scene.goal().furniture_id ? kGoalFurniture : kFurniture;
    for (int y = o.footprint->y0; y < o.footprint->y1; ++y)
      for (int x = o.footprint->x0; x < o.footprint->x1; ++x) p.cell({x, y}, color);
  }

  const int marker = std::max(1, style.scale / 2);
  auto object_color = [&](int id) {
    return scene.has_object(id) && scene.object(id).kind == ObjectKind::Container ? kContainer : kTarget;
  };

  if (style.show_objects) {
    if (traces.empty()) {
      for (const auto& o : scene.objects()) {
        if (o.kind != ObjectKind::Target && o.kind != ObjectKind::Container) continue;
        img.ring(p.px(o.pose.x), p.py(o.pose.y), marker + 1, object_color(o.id));
      }
    }
    for (const auto& t : traces) {
      for (const auto& o : t.header.objects) img.ring(p.px(o.pose.x), p.py(o.pose.y), marker + 1, object_color(o.id));
      if (t.end)
        for (const auto& o : t.end->objects) img.disc(p.px(o.pose.x), p.py(o.pose.y), marker, object_color(o.id));
    }
  }

  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& t = traces[i];
    const Rgb color = trace_color(i);
    Vec2 at = t.header.pose;
    img.disc(p.px(at.x), p.py(at.y), marker, color);
    for (const auto& step : t.steps) {
      for (const auto& w : step.waypoints) {
        img.line(p.px(at.x), p.py(at.y), p.px(w.x), p.py(w.y), color);
        at = w;
      }
      at = step.pose;
      if (!style.show_events || step.status != ActionStatus::Success) continue;
      const int cx = p.px(at.x);
      const int cy = p.py(at.y);
      if (step.action.kind == ActionKind::GoToGrasp) {
        img.fill_rect(cx - marker, cy - marker, cx + marker + 1, cy + marker + 1, color);
      } else if (step.action.kind == ActionKind::Drop) {
        img.line(cx - marker - 1, cy - marker - 1, cx + marker + 1, cy + marker + 1, color);
        img.line(cx - marker - 1, cy + marker + 1, cx + marker + 1, cy - marker - 1, color);
      }
    }
  }
  return img;
}

}  // namespace tc
