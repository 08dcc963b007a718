#include "smlr/export.hpp"

#include <fstream>
#include <ostream>
#include <string>

#include "smlr/benchmark.hpp"

namespace smlr {

void write_vertex_table(std::ostream& out, const SparseRoadmap& graph) {
    for (std::size_t id = 0; id < graph.guard_count(); ++id) {
        out << id;
        for (double c : graph.guard(static_cast<GuardId>(id)).coords()) out << ' ' << format_double(c);
        out << '\n';
    }
}

void write_edge_list(std::ostream& out, const SparseRoadmap& graph) {
    for (const RoadmapEdge& e : graph.edges()) out << e.u << ' ' << e.v << ' ' << format_double(e.length) << '\n';
}

void export_graph(const SparseRoadmap& graph, const std::filesystem::path& dir, const std::string& stem) {
    std::filesystem::create_directories(dir);
    std::ofstream vertices(dir / (stem + ".vertices.txt"));
    std::ofstream edges(dir / (stem + ".edges.txt"));
    if (!vertices || !edges) throw std::runtime_error("cannot write graph files in " + dir.string());
    write_vertex_table(vertices, graph);
    write_edge_list(edges, graph);
}

namespace {

constexpr double kCanvas = 600.0;

struct Frame {
    double lo[2];
    double hi[2];
    bool periodic[2];

    [[nodiscard]] double px(double x) const { return (x - lo[0]) / (hi[0] - lo[0]) * kCanvas; }
    [[nodiscard]] double py(double y) const { return kCanvas - (y - lo[1]) / (hi[1] - lo[1]) * kCanvas; }
};

void line(std::ostream& out, const Frame& f, double x0, double y0, double x1, double y1, const char* style) {
    out << "<line x1=\"" << f.px(x0) << "\" y1=\"" << f.py(y0) << "\" x2=\"" << f.px(x1) << "\" y2=\""
        << f.py(y1) << "\" " << style << "/>\n";
}

// Draws a state-space segment. When a coordinate wraps, the segment is drawn
// twice, once anchored at each endpoint, and the clip path trims the rest.
void segment(std::ostream& out, const Frame& f, const StateSpace& space, const State& a, const State& b,
             const char* style) {
    const auto d = space.difference(a, b);
    line(out, f, a[0], a[1], a[0] + d[0], a[1] + d[1], style);
    const bool wraps = std::abs(a[0] + d[0] - b[0]) > 1e-12 || std::abs(a[1] + d[1] - b[1]) > 1e-12;
    if (wraps) line(out, f, b[0] - d[0], b[1] - d[1], b[0], b[1], style);
}

void dot(std::ostream& out, const Frame& f, const State& x, double r, const char* style) {
    out << "<circle cx=\"" << f.px(x[0]) << "\" cy=\"" << f.py(x[1]) << "\" r=\"" << r << "\" " << style
        << "/>\n";
}

}  // namespace

void write_svg(std::ostream& out, const SvgFigure& figure) {
    if (figure.level == nullptr) throw std::invalid_argument("svg figure needs a level");
    const LevelValidity& level = *figure.level;
    const StateSpace& space = level.space();
    if (space.dimension() != 2) {
        throw UnsupportedDimensionError("svg export needs a 2-dimensional level, got dimension " +
                                        std::to_string(space.dimension()));
    }
    const auto layout = space.layout();
    const Frame f{{layout[0].lo, layout[1].lo}, {layout[0].hi, layout[1].hi}, {layout[0].periodic, layout[1].periodic}};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
        << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
    out << "<defs><clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << kCanvas
        << "\"/></clipPath></defs>\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"white\"/>\n";

    // Occupancy raster of the level, which works for any robot model.
    const std::size_t n = std::max<std::size_t>(figure.raster, 1);
    const double cell = kCanvas / static_cast<double>(n);
    out << "<g fill=\"#9a9a9a\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double x = f.lo[0] + (static_cast<double>(i) + 0.5) / static_cast<double>(n) * (f.hi[0] - f.lo[0]);
            const double y = f.lo[1] + (static_cast<double>(j) + 0.5) / static_cast<double>(n) * (f.hi[1] - f.lo[1]);
            if (!level.is_valid(State{x, y})) {
                out << "<rect x=\"" << static_cast<double>(i) * cell << "\" y=\""
                    << kCanvas - static_cast<double>(j + 1) * cell << "\" width=\"" << cell << "\" height=\""
                    << cell << "\"/>\n";
            }
        }
    }
    out << "</g>\n";

    // Obstacle outlines when state coordinates are workspace coordinates.
    const bool planar = std::holds_alternative<PointRobot>(level.robot().model()) ||
                        std::holds_alternative<DiscRobot>(level.robot().model());
    if (planar && !f.periodic[0] && !f.periodic[1]) {
        out << "<g fill=\"none\" stroke=\"black\" stroke-width=\"1\">\n";
        for (const Obstacle& o : level.workspace().obstacles) {
            if (const auto* d = std::get_if<DiscShape>(&o.shape())) {
                out << "<circle cx=\"" << f.px(d->center.x) << "\" cy=\"" << f.py(d->center.y) << "\" r=\""
                    << d->radius / (f.hi[0] - f.lo[0]) * kCanvas << "\"/>\n";
            } else {
                std::vector<Vec2> pts;
                if (const auto* b = std::get_if<BoxShape>(&o.shape())) {
                    pts = geometry::box_polygon(b->lo, b->hi);
                } else {
                    pts = std::get<PolygonShape>(o.shape()).vertices;
                }
                out << "<polygon points=\"";
                for (const Vec2& p : pts) out << f.px(p.x) << ',' << f.py(p.y) << ' ';
                out << "\"/>\n";
            }
        }
        out << "</g>\n";
    }

    out << "<g clip-path=\"url(#frame)\">\n";
    for (const State& s : figure.samples) dot(out, f, s, 1.2, "fill=\"#6fa8dc\"");
    if (figure.graph != nullptr) {
        const SparseRoadmap& g = *figure.graph;
        for (const RoadmapEdge& e : g.edges()) {
            segment(out, f, space, g.guard(e.u), g.guard(e.v), "stroke=\"#1f4e79\" stroke-width=\"1\"");
        }
        for (const State& q : g.guards()) dot(out, f, q, 2.5, "fill=\"#1f4e79\"");
    }
    for (std::size_t i = 0; i + 1 < figure.path.size(); ++i) {
        segment(out, f, space, figure.path[i], figure.path[i + 1], "stroke=\"#cc0000\" stroke-width=\"2.5\"");
    }
    if (!figure.path.empty()) {
        dot(out, f, figure.path.front(), 5.0, "fill=\"#00a000\"");
        dot(out, f, figure.path.back(), 5.0, "fill=\"#e69138\"");
    }
    out << "</g>\n";

    // Dashed borders mark the identified edges of a periodic axis.
    if (f.periodic[0]) {
        out << "<g stroke=\"#555\" stroke-dasharray=\"6 4\" stroke-width=\"2\">"
            << "<line x1=\"1\" y1=\"0\" x2=\"1\" y2=\"" << kCanvas << "\"/>"
            << "<line x1=\"" << kCanvas - 1 << "\" y1=\"0\" x2=\"" << kCanvas - 1 << "\" y2=\"" << kCanvas
            << "\"/></g>\n";
    }
    if (f.periodic[1]) {
        out << "<g stroke=\"#555\" stroke-dasharray=\"6 4\" stroke-width=\"2\">"
            << "<line x1=\"0\" y1=\"1\" x2=\"" << kCanvas << "\" y2=\"1\"/>"
            << "<line x1=\"0\" y1=\"" << kCanvas - 1 << "\" x2=\"" << kCanvas << "\" y2=\"" << kCanvas - 1
            << "\"/></g>\n";
    }
    out << "</svg>\n";
}

void export_svg(const SvgFigure& figure, const std::filesystem::path& out_path) {
    if (out_path.has_parent_path()) std::filesystem::create_directories(out_path.parent_path());
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path.string());
    write_svg(out, figure);
}

}  // namespace smlr
