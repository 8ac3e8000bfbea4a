#include "fiberfrac/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_map>

#include "fiberfrac/errors.hpp"

namespace fiberfrac {

namespace {

/// Uniform double in [0, 1) from the top 53 bits; platform independent.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double cross2(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return a.x() * b.y() - a.y() * b.x();
}

/// Liang-Barsky clip of a -> b to [0,W]x[0,H]; coordinates cut by an edge are
/// set exactly onto it.
std::optional<FiberSegment> clip_to_domain(Eigen::Vector2d a, Eigen::Vector2d b, double W,
                                           double H) {
    const Eigen::Vector2d d = b - a;
    double t0 = 0.0;
    double t1 = 1.0;
    int edge0 = -1;
    int edge1 = -1;
    const double p[4] = {-d.x(), d.x(), -d.y(), d.y()};
    const double q[4] = {a.x(), W - a.x(), a.y(), H - a.y()};
    for (int i = 0; i < 4; ++i) {
        if (p[i] == 0.0) {
            if (q[i] < 0.0) return std::nullopt;
            continue;
        }
        const double r = q[i] / p[i];
        if (p[i] < 0.0) {
            if (r > t1) return std::nullopt;
            if (r > t0) {
                t0 = r;
                edge0 = i;
            }
        } else {
            if (r < t0) return std::nullopt;
            if (r < t1) {
                t1 = r;
                edge1 = i;
            }
        }
    }
    const double edge_value[4] = {0.0, W, 0.0, H};
    auto snap = [&](Eigen::Vector2d& pt, int edge) {
        if (edge < 0) return;
        if (edge < 2) pt.x() = edge_value[edge]; else pt.y() = edge_value[edge];
        pt.x() = std::clamp(pt.x(), 0.0, W);
        pt.y() = std::clamp(pt.y(), 0.0, H);
    };
    FiberSegment s{a + t0 * d, a + t1 * d};
    snap(s.a, edge0);
    snap(s.b, edge1);
    return s;
}

/// Node store with snapping: a point closer than tol to an existing node
/// returns that node (the lowest id among candidates).
class NodeRegistry {
public:
    explicit NodeRegistry(double tol) : tol_(tol) {}

    int get_or_create(const Eigen::Vector2d& p) {
        const auto [cx, cy] = cell_of(p);
        int best = -1;
        for (long ix = cx - 1; ix <= cx + 1; ++ix) {
            for (long iy = cy - 1; iy <= cy + 1; ++iy) {
                const auto it = cells_.find(key(ix, iy));
                if (it == cells_.end()) continue;
                for (const int id : it->second) {
                    if ((points_[id] - p).norm() < tol_ && (best < 0 || id < best)) {
                        best = id;
                    }
                }
            }
        }
        if (best >= 0) return best;
        const int id = static_cast<int>(points_.size());
        points_.push_back(p);
        cells_[key(cx, cy)].push_back(id);
        return id;
    }

    const std::vector<Eigen::Vector2d>& points() const { return points_; }

private:
    std::pair<long, long> cell_of(const Eigen::Vector2d& p) const {
        return {static_cast<long>(std::floor(p.x() / tol_)),
                static_cast<long>(std::floor(p.y() / tol_))};
    }
    static std::uint64_t key(long ix, long iy) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
               static_cast<std::uint32_t>(iy);
    }

    double tol_;
    std::vector<Eigen::Vector2d> points_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

std::string percolation_report(const NetworkModel& model, int components) {
    std::ostringstream os;
    os << "no connected load path between the grips (nodes " << model.nodes.size()
       << ", elements " << model.elements.size() << ", components " << components
       << ", fixed grip nodes " << model.bcs.fixed.size() << ", moving grip nodes "
       << model.bcs.moving.size() << ")";
    return os.str();
}

int count_components(const NetworkModel& model) {
    UnionFind uf(model.nodes.size());
    std::vector<char> used(model.nodes.size(), 0);
    for (const auto& e : model.elements) {
        uf.unite(e.nodes[0], e.nodes[1]);
        used[e.nodes[0]] = used[e.nodes[1]] = 1;
    }
    int n = 0;
    for (std::size_t i = 0; i < model.nodes.size(); ++i) {
        if (used[i] && uf.find(static_cast<int>(i)) == static_cast<int>(i)) ++n;
    }
    return n;
}

}  // namespace

void NetworkSpec::validate() const {
    if (!(width > 0.0 && height > 0.0)) throw InvalidConfig("domain size must be positive");
    if (!(target_density > 0.0)) throw InvalidConfig("target density must be positive");
    if (!(fiber.length > 0.0)) throw InvalidConfig("fiber length must be positive");
    if (!(fiber.density > 0.0)) throw InvalidConfig("fiber density must be positive");
    if (!(l_min > 0.0)) throw InvalidConfig("l_min must be positive");
    if (!(grip_band >= 0.0)) throw InvalidConfig("grip band must be nonnegative");
    if (notch && !(notch->angle_deg > 0.0 && notch->angle_deg < 180.0)) {
        throw InvalidConfig("notch opening angle must lie in (0, 180) degrees");
    }
}

double NetworkSpec::sheet_thickness() const {
    return fiber.height > 0.0 ? fiber.height : std::sqrt(fiber.section.A());
}

int fiber_count(const NetworkSpec& spec) {
    spec.validate();
    const double n = spec.target_density * spec.width * spec.height * spec.sheet_thickness() /
                     (spec.fiber.density * spec.fiber.section.A() * spec.fiber.length);
    return static_cast<int>(std::lround(n));
}

std::vector<FiberSegment> deposit_fibers(const NetworkSpec& spec) {
    const int n_f = fiber_count(spec);
    std::mt19937_64 rng(spec.seed);
    std::vector<FiberSegment> fibers;
    fibers.reserve(static_cast<std::size_t>(n_f));
    for (int i = 0; i < n_f; ++i) {
        const Eigen::Vector2d mid(spec.width * uniform01(rng), spec.height * uniform01(rng));
        const double angle = std::numbers::pi * uniform01(rng);
        const Eigen::Vector2d half = 0.5 * spec.fiber.length *
                                     Eigen::Vector2d(std::cos(angle), std::sin(angle));
        auto clipped = clip_to_domain(mid - half, mid + half, spec.width, spec.height);
        if (clipped && (clipped->b - clipped->a).norm() > spec.l_min) {
            fibers.push_back(*clipped);
        }
    }
    return fibers;
}

NetworkModel mesh_fibers(const std::vector<FiberSegment>& fibers, const NetworkSpec& spec) {
    spec.validate();
    const double l_e_max = spec.l_e_max > 0.0 ? spec.l_e_max : 0.5 * spec.fiber.length;

    NodeRegistry registry(spec.l_min);
    struct Stop {
        double t;
        int node;
    };
    std::vector<std::vector<Stop>> stops(fibers.size());
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        stops[i].push_back({0.0, registry.get_or_create(fibers[i].a)});
        stops[i].push_back({1.0, registry.get_or_create(fibers[i].b)});
    }

    GenerationReport report;
    report.fibers_requested = fiber_count(spec);
    report.fibers_deposited = static_cast<int>(fibers.size());
    for (const auto& f : fibers) report.deposited_length += (f.b - f.a).norm();

    for (std::size_t i = 0; i < fibers.size(); ++i) {
        const Eigen::Vector2d da = fibers[i].b - fibers[i].a;
        for (std::size_t j = i + 1; j < fibers.size(); ++j) {
            const Eigen::Vector2d db = fibers[j].b - fibers[j].a;
            const double denom = cross2(da, db);
            if (std::abs(denom) < 1e-14 * da.norm() * db.norm()) continue;
            const Eigen::Vector2d ab = fibers[j].a - fibers[i].a;
            const double t = cross2(ab, db) / denom;
            const double s = cross2(ab, da) / denom;
            if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0) continue;
            const int node = registry.get_or_create(fibers[i].a + t * da);
            stops[i].push_back({t, node});
            stops[j].push_back({s, node});
            ++report.intersections;
        }
    }

    // walk every fiber, emitting elements between consecutive distinct nodes
    std::vector<std::array<int, 3>> raw;  // n1, n2, fiber
    for (std::size_t i = 0; i < fibers.size(); ++i) {
        auto& fs = stops[i];
        std::stable_sort(fs.begin(), fs.end(), [](const Stop& a, const Stop& b) {
            return a.t < b.t || (a.t == b.t && a.node < b.node);
        });
        int prev = fs.front().node;
        for (std::size_t k = 1; k < fs.size(); ++k) {
            const int next = fs[k].node;
            if (next == prev) continue;
            const Eigen::Vector2d pa = registry.points()[prev];
            const Eigen::Vector2d pb = registry.points()[next];
            const int pieces = std::max(1, static_cast<int>(std::ceil((pb - pa).norm() / l_e_max)));
            int from = prev;
            for (int p = 1; p <= pieces; ++p) {
                const int to = p == pieces
                                   ? next
                                   : registry.get_or_create(pa + (pb - pa) * (double(p) / pieces));
                if (to != from) raw.push_back({from, to, static_cast<int>(i)});
                from = to;
            }
            prev = next;
        }
    }

    NetworkModel model;
    model.width = spec.width;
    model.height = spec.height;
    model.thickness = spec.sheet_thickness();
    model.sections.push_back(spec.fiber.section);
    model.nodes.reserve(registry.points().size());
    for (const auto& p : registry.points()) model.nodes.emplace_back(p.x(), p.y(), 0.0);
    model.elements.reserve(raw.size());
    for (const auto& r : raw) {
        BeamElement e;
        e.id = static_cast<int>(model.elements.size());
        e.nodes = {r[0], r[1]};
        e.section = 0;
        e.fiber = r[2];
        model.elements.push_back(e);
        report.meshed_length += (model.nodes[r[1]] - model.nodes[r[0]]).norm();
    }
    report.elements_before_pruning = static_cast<int>(model.elements.size());
    report.components = count_components(model);

    model.bcs.fixed.clear();
    model.bcs.moving.clear();
    for (std::size_t n = 0; n < model.nodes.size(); ++n) {
        if (model.nodes[n].x() <= spec.grip_band) model.bcs.fixed.push_back(static_cast<int>(n));
        if (model.nodes[n].x() >= spec.width - spec.grip_band) {
            model.bcs.moving.push_back(static_cast<int>(n));
        }
    }
    if (model.bcs.fixed.empty() || model.bcs.moving.empty()) {
        throw GenerationFailed(percolation_report(model, report.components));
    }
    const int components = report.components;
    report.elements_pruned = prune_to_load_path(model, spec.prune_dead_ends);
    if (model.elements.empty()) {
        throw GenerationFailed(percolation_report(model, components));
    }
    model.generation = report;
    return model;
}

NetworkModel generate(const NetworkSpec& spec) {
    NetworkModel model = mesh_fibers(deposit_fibers(spec), spec);
    if (spec.notch) {
        model = apply_notch(model, *spec.notch);
    }
    return model;
}

int prune_to_load_path(NetworkModel& model, bool prune_dead_ends) {
    const std::size_t n_nodes = model.nodes.size();
    std::vector<char> is_fixed(n_nodes, 0), is_moving(n_nodes, 0);
    for (const int n : model.bcs.fixed) is_fixed[n] = 1;
    for (const int n : model.bcs.moving) is_moving[n] = 1;

    std::vector<char> keep(model.elements.size(), 1);
    if (prune_dead_ends) {
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<int> degree(n_nodes, 0);
            for (std::size_t e = 0; e < model.elements.size(); ++e) {
                if (!keep[e]) continue;
                ++degree[model.elements[e].nodes[0]];
                ++degree[model.elements[e].nodes[1]];
            }
            for (std::size_t e = 0; e < model.elements.size(); ++e) {
                if (!keep[e]) continue;
                for (const int n : model.elements[e].nodes) {
                    if (degree[n] == 1 && !is_fixed[n] && !is_moving[n]) {
                        keep[e] = 0;
                        changed = true;
                        break;
                    }
                }
            }
        }
    }

    UnionFind uf(n_nodes);
    for (std::size_t e = 0; e < model.elements.size(); ++e) {
        if (keep[e]) uf.unite(model.elements[e].nodes[0], model.elements[e].nodes[1]);
    }
    std::vector<char> root_fixed(n_nodes, 0), root_moving(n_nodes, 0);
    for (std::size_t e = 0; e < model.elements.size(); ++e) {
        if (!keep[e]) continue;
        for (const int n : model.elements[e].nodes) {
            if (is_fixed[n]) root_fixed[uf.find(n)] = 1;
            if (is_moving[n]) root_moving[uf.find(n)] = 1;
        }
    }

    std::vector<int> node_map(n_nodes, -1);
    std::vector<BeamElement> kept;
    int removed = 0;
    for (std::size_t e = 0; e < model.elements.size(); ++e) {
        const auto& el = model.elements[e];
        const int root = uf.find(el.nodes[0]);
        if (!keep[e] || !root_fixed[root] || !root_moving[root]) {
            ++removed;
            continue;
        }
        node_map[el.nodes[0]] = node_map[el.nodes[1]] = 0;
        kept.push_back(el);
    }

    std::vector<Eigen::Vector3d> nodes;
    for (std::size_t n = 0; n < n_nodes; ++n) {
        if (node_map[n] == 0) {
            node_map[n] = static_cast<int>(nodes.size());
            nodes.push_back(model.nodes[n]);
        }
    }
    for (std::size_t e = 0; e < kept.size(); ++e) {
        kept[e].id = static_cast<int>(e);
        kept[e].nodes = {node_map[kept[e].nodes[0]], node_map[kept[e].nodes[1]]};
    }
    auto remap = [&](const std::vector<int>& ids) {
        std::vector<int> out;
        for (const int n : ids) {
            if (node_map[n] >= 0) out.push_back(node_map[n]);
        }
        return out;
    };
    model.bcs.fixed = remap(model.bcs.fixed);
    model.bcs.moving = remap(model.bcs.moving);
    model.nodes = std::move(nodes);
    model.elements = std::move(kept);
    return removed;
}

NetworkModel apply_notch(const NetworkModel& model, const NotchSpec& notch) {
    if (notch.depth == 0.0) {
        return model;
    }
    if (!(notch.angle_deg > 0.0 && notch.angle_deg < 180.0) || !(notch.depth > 0.0)) {
        throw InvalidConfig("notch needs a positive depth and an opening angle in (0, 180)");
    }
    const double half = notch.depth * std::tan(0.5 * notch.angle_deg * std::numbers::pi / 180.0);
    const Eigen::Vector2d v[3] = {{notch.apex_x - half, 0.0},
                                  {notch.apex_x + half, 0.0},
                                  {notch.apex_x, notch.depth}};
    if (v[0].x() < 0.0 || v[1].x() > model.width || notch.depth > model.height) {
        throw InvalidConfig("notch triangle does not fit inside the specimen");
    }

    // inward normals of the counter-clockwise triangle v0 -> v1 -> v2
    Eigen::Vector2d normal[3];
    for (int k = 0; k < 3; ++k) {
        const Eigen::Vector2d edge = v[(k + 1) % 3] - v[k];
        normal[k] = Eigen::Vector2d(-edge.y(), edge.x()).normalized();
    }
    const double eps = 1e-12 * std::max(model.width, model.height);

    auto crosses_notch = [&](const Eigen::Vector2d& p, const Eigen::Vector2d& q) {
        double t0 = 0.0;
        double t1 = 1.0;
        const Eigen::Vector2d d = q - p;
        for (int k = 0; k < 3; ++k) {
            const double num = normal[k].dot(p - v[k]);
            const double den = normal[k].dot(d);
            if (den == 0.0) {
                if (num <= eps) return false;
                continue;
            }
            const double t = -num / den;
            if (den > 0.0) t0 = std::max(t0, t); else t1 = std::min(t1, t);
        }
        if (t1 - t0 <= 1e-12) return false;
        const Eigen::Vector2d mid = p + 0.5 * (t0 + t1) * d;
        for (int k = 0; k < 3; ++k) {
            if (normal[k].dot(mid - v[k]) <= eps) return false;
        }
        return true;
    };

    NetworkModel out = model;
    std::vector<BeamElement> kept;
    int removed = 0;
    for (const auto& e : model.elements) {
        const Eigen::Vector2d p = model.nodes[e.nodes[0]].head<2>();
        const Eigen::Vector2d q = model.nodes[e.nodes[1]].head<2>();
        if (crosses_notch(p, q)) {
            ++removed;
        } else {
            kept.push_back(e);
        }
    }
    out.elements = std::move(kept);
    const int components = count_components(out);
    prune_to_load_path(out);
    if (out.elements.empty() || out.bcs.fixed.empty() || out.bcs.moving.empty()) {
        throw GenerationFailed("notch disconnects the specimen: " +
                               percolation_report(out, components));
    }
    out.generation.elements_removed_by_notch += removed;
    return out;
}

BoundarySets boundary_sets(const NetworkModel& model, double grip_band) {
    BoundarySets sets;
    for (std::size_t n = 0; n < model.nodes.size(); ++n) {
        const double x = model.nodes[n].x();
        const bool fixed = x <= grip_band;
        const bool moving = x >= model.width - grip_band;
        if (fixed && moving) {
            throw GenerationFailed("grip bands overlap");
        }
        if (fixed) sets.fixed.push_back(static_cast<int>(n));
        if (moving) sets.moving.push_back(static_cast<int>(n));
    }
    if (sets.fixed.empty() || sets.moving.empty()) {
        throw GenerationFailed("empty grip set: no node within the grip band of an edge");
    }
    return sets;
}

std::vector<ElementGeometry> element_geometries(const NetworkModel& model) {
    std::vector<ElementGeometry> geoms;
    geoms.reserve(model.elements.size());
    for (const auto& e : model.elements) {
        geoms.push_back(ElementGeometry::from_points(e.nodes[0], e.nodes[1],
                                                     model.nodes[e.nodes[0]],
                                                     model.nodes[e.nodes[1]]));
    }
    return geoms;
}

void validate_model(const NetworkModel& model) {
    const int n_nodes = static_cast<int>(model.nodes.size());
    for (const auto& e : model.elements) {
        for (const int n : e.nodes) {
            if (n < 0 || n >= n_nodes) throw InvalidGeometry("element references a missing node");
        }
        if (e.section < 0 || e.section >= static_cast<int>(model.sections.size())) {
            throw InvalidGeometry("element references a missing section");
        }
    }
    for (const auto* set : {&model.bcs.fixed, &model.bcs.moving}) {
        for (const int n : *set) {
            if (n < 0 || n >= n_nodes) throw InvalidGeometry("grip set references a missing node");
        }
    }
    if (model.bcs.fixed.empty() || model.bcs.moving.empty()) {
        throw InvalidGeometry("model needs non-empty fixed and moving grip sets");
    }
    element_geometries(model);
}

}  // namespace fiberfrac
