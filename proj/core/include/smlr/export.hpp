// Roadmap export: plain-text vertex table and edge list, and SVG figures of
// two-dimensional levels.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "smlr/sparse_roadmap.hpp"
#include "smlr/validity.hpp"

namespace smlr {

class UnsupportedDimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// One line per guard: `id c0 ... c{n-1}`.
void write_vertex_table(std::ostream& out, const SparseRoadmap& graph);
/// One line per edge: `u v length`.
void write_edge_list(std::ostream& out, const SparseRoadmap& graph);
/// Writes <stem>.vertices.txt and <stem>.edges.txt into dir.
void export_graph(const SparseRoadmap& graph, const std::filesystem::path& dir, const std::string& stem);

struct SvgFigure {
    const LevelValidity* level = nullptr;  // required
    const SparseRoadmap* graph = nullptr;  // optional
    std::vector<State> path;               // optional solution path
    std::vector<State> samples;            // optional raw samples drawn as dots
    std::size_t raster = 120;              // occupancy raster cells per side
};

/// Throws UnsupportedDimensionError unless the level is two-dimensional.
/// Periodic axes are drawn as a square with dashed wrap borders and edges
/// crossing the seam are split.
void write_svg(std::ostream& out, const SvgFigure& figure);
void export_svg(const SvgFigure& figure, const std::filesystem::path& out_path);

}  // namespace smlr
