#include "smlr/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace smlr {
namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& field, const std::string& message) {
    throw ScenarioError(source + ": " + field + ": " + message);
}

[[noreturn]] void invariant(const std::string& source, const std::string& name, const std::string& detail) {
    throw ScenarioError(source + ": invariant \"" + name + "\" violated: " + detail);
}

// Small typed accessor that carries the JSON path for diagnostics.
class Node {
public:
    Node(const json& value, std::string path, const std::string& source)
        : value_(value), path_(std::move(path)), source_(source) {}

    [[nodiscard]] bool has(const char* key) const { return value_.is_object() && value_.contains(key); }

    [[nodiscard]] Node at(const char* key) const {
        if (!value_.is_object()) fail(source_, path_, "expected an object");
        if (!value_.contains(key)) fail(source_, path_ + "." + key, "missing required field");
        return Node(value_.at(key), path_ + "." + key, source_);
    }

    [[nodiscard]] Node at(std::size_t i) const {
        return Node(value_.at(i), path_ + "[" + std::to_string(i) + "]", source_);
    }

    [[nodiscard]] std::size_t size() const {
        if (!value_.is_array()) fail(source_, path_, "expected an array");
        return value_.size();
    }

    [[nodiscard]] double number() const {
        if (!value_.is_number()) fail(source_, path_, "expected a number");
        return value_.get<double>();
    }

    [[nodiscard]] std::uint64_t count() const {
        if (!value_.is_number_integer() || value_.get<long long>() < 0) {
            fail(source_, path_, "expected a non-negative integer");
        }
        return value_.get<std::uint64_t>();
    }

    [[nodiscard]] std::string text() const {
        if (!value_.is_string()) fail(source_, path_, "expected a string");
        return value_.get<std::string>();
    }

    [[nodiscard]] std::vector<double> numbers() const {
        std::vector<double> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
        return out;
    }

    [[nodiscard]] std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(static_cast<std::size_t>(at(i).count()));
        return out;
    }

    [[nodiscard]] Vec2 vec2() const {
        const auto v = numbers();
        if (v.size() != 2) fail(source_, path_, "expected two coordinates");
        return {v[0], v[1]};
    }

    [[nodiscard]] const std::string& path() const noexcept { return path_; }
    [[noreturn]] void error(const std::string& message) const { fail(source_, path_, message); }

private:
    const json& value_;
    std::string path_;
    const std::string& source_;
};

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

Obstacle parse_obstacle(const Node& node) {
    const std::string type = node.at("type").text();
    try {
        if (type == "box") return Obstacle::box(node.at("lo").vec2(), node.at("hi").vec2());
        if (type == "disc") return Obstacle::disc(node.at("center").vec2(), node.at("radius").number());
        if (type == "polygon") {
            const Node verts = node.at("vertices");
            std::vector<Vec2> pts;
            for (std::size_t i = 0; i < verts.size(); ++i) pts.push_back(verts.at(i).vec2());
            return Obstacle::polygon(std::move(pts));
        }
    } catch (const std::invalid_argument& e) {
        node.error(e.what());
    }
    node.at("type").error("unknown obstacle type \"" + type + "\"");
}

StateSpace parse_space(const Node& node) {
    std::vector<StateSpace> parts;
    std::vector<double> weights;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const Node part = node.at(i);
        const std::string type = part.at("type").text();
        if (type == "real") {
            const Node bounds = part.at("bounds");
            std::vector<Interval> iv;
            for (std::size_t j = 0; j < bounds.size(); ++j) {
                const auto b = bounds.at(j).numbers();
                if (b.size() != 2) bounds.at(j).error("expected [lo, hi]");
                iv.push_back({b[0], b[1]});
            }
            try {
                parts.push_back(StateSpace::real_vector(std::move(iv)));
            } catch (const std::invalid_argument& e) {
                bounds.error(e.what());
            }
        } else if (type == "circle") {
            parts.push_back(StateSpace::circle());
        } else {
            part.at("type").error("unknown space type \"" + type + "\"");
        }
        weights.push_back(part.has("weight") ? part.at("weight").number() : 1.0);
    }
    if (parts.empty()) node.error("a level needs at least one space component");
    if (parts.size() == 1 && weights[0] == 1.0) return parts[0];
    if (parts.size() == 1) {
        std::vector<CoordinateInfo> coords(parts[0].layout().begin(), parts[0].layout().end());
        for (CoordinateInfo& c : coords) c.scale_sq *= weights[0] * weights[0];
        return StateSpace::from_coordinates(coords);
    }
    try {
        return StateSpace::product(std::move(parts), std::move(weights));
    } catch (const std::invalid_argument& e) {
        node.error(e.what());
    }
}

RobotModel parse_robot(const Node& node) {
    const std::string type = node.at("type").text();
    auto index = [&node](const char* key, std::size_t fallback) {
        return node.has(key) ? static_cast<std::size_t>(node.at(key).count()) : fallback;
    };
    try {
        if (type == "point") return RobotModel(PointRobot{index("x_index", 0), index("y_index", 1)});
        if (type == "disc") {
            return RobotModel(DiscRobot{node.at("radius").number(), index("x_index", 0), index("y_index", 1)});
        }
        if (type == "rigid_polygon") {
            RigidPolygonRobot robot;
            const Node parts = node.at("parts");
            for (std::size_t i = 0; i < parts.size(); ++i) {
                std::vector<Vec2> pts;
                for (std::size_t j = 0; j < parts.at(i).size(); ++j) pts.push_back(parts.at(i).at(j).vec2());
                robot.parts.push_back(std::move(pts));
            }
            robot.x_index = index("x_index", 0);
            robot.y_index = index("y_index", 1);
            robot.theta_index = index("theta_index", 2);
            return RobotModel(std::move(robot));
        }
        if (type == "planar_chain") {
            PlanarChainRobot robot;
            if (node.has("base_indices")) {
                const auto b = node.at("base_indices").indices();
                if (b.size() != 2) node.at("base_indices").error("expected two indices");
                robot.base_indices = std::array<std::size_t, 2>{b[0], b[1]};
            } else {
                robot.fixed_base = node.at("fixed_base").vec2();
            }
            robot.link_lengths = node.at("link_lengths").numbers();
            robot.joint_indices = node.at("joint_indices").indices();
            return RobotModel(std::move(robot));
        }
    } catch (const std::invalid_argument& e) {
        node.error(e.what());
    }
    node.at("type").error("unknown robot type \"" + type + "\"");
}

State parse_state(const Node& node, const StateSpace& space, const std::string& source, const char* name) {
    const auto coords = node.numbers();
    if (coords.size() != space.dimension()) {
        invariant(source, std::string(name) + " dimension matches last level",
                  "got " + std::to_string(coords.size()) + " coordinates, level has " +
                      std::to_string(space.dimension()));
    }
    const auto layout = space.layout();
    for (std::size_t j = 0; j < coords.size(); ++j) {
        if (!layout[j].periodic && (coords[j] < layout[j].lo || coords[j] > layout[j].hi)) {
            invariant(source, std::string(name) + " within bounds",
                      "coordinate " + std::to_string(j) + " is outside [" + std::to_string(layout[j].lo) + ", " +
                          std::to_string(layout[j].hi) + "]");
        }
    }
    return space.normalize(coords);
}

}  // namespace

std::string_view to_string(GroundTruth truth) {
    return truth == GroundTruth::kFeasible ? "feasible" : "infeasible";
}

FiberBundleSequence Scenario::flat_sequence() const {
    const FiberBundleSequence& seq = levels();
    return FiberBundleSequence({seq.validity(seq.size() - 1)}, {{}});
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ScenarioError(source + ": line " + std::to_string(line_of(text, e.byte)) + ": parse error: " +
                            e.what());
    }
    const Node root(doc, "$", source);

    const std::uint64_t version = root.at("format_version").count();
    if (version != kScenarioFormatVersion) {
        root.at("format_version").error("unsupported format version " + std::to_string(version));
    }

    Scenario sc;
    sc.name = root.at("name").text();

    const std::string truth = root.at("ground_truth").text();
    if (truth == "feasible") {
        sc.ground_truth = GroundTruth::kFeasible;
    } else if (truth == "infeasible") {
        sc.ground_truth = GroundTruth::kInfeasible;
    } else {
        root.at("ground_truth").error("expected \"feasible\" or \"infeasible\"");
    }

    auto ws = std::make_shared<Workspace>();
    const Node wnode = root.at("workspace");
    ws->lo = wnode.at("lo").vec2();
    ws->hi = wnode.at("hi").vec2();
    if (!(ws->lo.x < ws->hi.x && ws->lo.y < ws->hi.y)) invariant(source, "workspace lo < hi", "empty workspace");
    if (wnode.has("obstacles")) {
        const Node obs = wnode.at("obstacles");
        for (std::size_t i = 0; i < obs.size(); ++i) ws->obstacles.push_back(parse_obstacle(obs.at(i)));
    }
    sc.workspace = ws;

    if (root.has("planner")) {
        const Node p = root.at("planner");
        if (p.has("M")) sc.defaults.max_failures = p.at("M").count();
        if (p.has("delta_fraction")) sc.defaults.delta_fraction = p.at("delta_fraction").number();
        if (p.has("eta")) sc.defaults.eta = p.at("eta").count();
        if (p.has("stretch")) sc.defaults.stretch_t = p.at("stretch").number();
        if (p.has("time_limit")) sc.defaults.time_limit = p.at("time_limit").number();
        if (p.has("check_resolution")) sc.defaults.check_resolution = p.at("check_resolution").number();
        try {
            sc.defaults.validate();
        } catch (const std::invalid_argument& e) {
            p.error(e.what());
        }
    }
    if (root.has("oracle")) sc.oracle_resolution = root.at("oracle").at("resolution").number();
    if (!(sc.oracle_resolution > 0.0)) root.at("oracle").error("resolution must be positive");

    const Node lnodes = root.at("levels");
    if (lnodes.size() == 0) invariant(source, "at least one level", "levels is empty");
    std::vector<LevelValidity> levels;
    std::vector<std::vector<std::size_t>> base_indices;
    for (std::size_t k = 0; k < lnodes.size(); ++k) {
        const Node lv = lnodes.at(k);
        StateSpace space = parse_space(lv.at("space"));
        RobotModel robot = parse_robot(lv.at("robot"));
        try {
            robot.check_covers(space.dimension());
        } catch (const std::invalid_argument& e) {
            invariant(source, "robot reads every level coordinate", lv.path() + ": " + e.what());
        }
        levels.emplace_back(std::move(space), std::move(robot), ws, sc.defaults.check_resolution);
        if (k == 0) {
            base_indices.emplace_back();
        } else {
            base_indices.push_back(lv.at("base_coord_indices").indices());
        }
    }
    const StateSpace top = levels.back().space();
    try {
        sc.sequence.emplace(std::move(levels), std::move(base_indices));
    } catch (const std::invalid_argument& e) {
        invariant(source, "levels form a fiber bundle sequence", std::string("dimension error: ") + e.what());
    }

    sc.start = parse_state(root.at("start"), top, source, "start");
    sc.goal = parse_state(root.at("goal"), top, source, "goal");
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path.string() + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

}  // namespace smlr
