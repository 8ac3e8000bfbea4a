#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "fiberfrac/errors.hpp"
#include "fiberfrac/netgen.hpp"
#include "fiberfrac/network_io.hpp"

using namespace fiberfrac;

namespace {

NetworkSpec box_spec(double w, double h) {
    NetworkSpec spec;
    spec.width = w;
    spec.height = h;
    return spec;
}

NetworkSpec small_spec(std::uint64_t seed = 42) {
    NetworkSpec spec;
    spec.width = 6.0;
    spec.height = 3.0;
    spec.target_density = 1000.0;
    spec.seed = seed;
    return spec;
}

}  // namespace

TEST(FiberCount, MatchesFormula) {
    NetworkSpec spec;
    // rho_s W H t / (rho_f A L_f) with t = sqrt(2.8e-4)
    spec.target_density = 1000.0;
    EXPECT_EQ(fiber_count(spec), 1721);
    spec.target_density = 500.0;
    EXPECT_EQ(fiber_count(spec), 861);
    spec.target_density = 300.0;
    EXPECT_EQ(fiber_count(spec), 516);
}

TEST(MeshFibers, TwoCrossingFibers) {
    const NetworkSpec spec = box_spec(2.0, 2.0);
    const std::vector<FiberSegment> fibers{{{0.0, 0.5}, {2.0, 1.5}}, {{0.0, 1.5}, {2.0, 0.5}}};
    const NetworkModel m = mesh_fibers(fibers, spec);
    EXPECT_EQ(m.nodes.size(), 5u);
    EXPECT_EQ(m.elements.size(), 4u);
    EXPECT_EQ(m.generation.intersections, 1);

    std::map<int, int> degree;
    for (const auto& e : m.elements) {
        ++degree[e.nodes[0]];
        ++degree[e.nodes[1]];
    }
    int bonds = 0;
    for (const auto& [node, deg] : degree) {
        if (deg == 4) {
            ++bonds;
            EXPECT_NEAR(m.nodes[node].x(), 1.0, 1e-14);
            EXPECT_NEAR(m.nodes[node].y(), 1.0, 1e-14);
        }
    }
    EXPECT_EQ(bonds, 1);
    EXPECT_EQ(m.bcs.fixed.size(), 2u);
    EXPECT_EQ(m.bcs.moving.size(), 2u);
}

TEST(MeshFibers, LongSpansAreSubdivided) {
    NetworkSpec spec = box_spec(10.0, 4.0);
    const std::vector<FiberSegment> fibers{{{0.0, 2.0}, {10.0, 2.0}}};
    const NetworkModel m = mesh_fibers(fibers, spec);
    EXPECT_EQ(m.elements.size(), 8u);  // ceil(10 / 1.25)
    for (const auto& g : element_geometries(m)) EXPECT_LE(g.l_e, 1.25 + 1e-12);
}

TEST(MeshFibers, DisconnectedNetworkFails) {
    const NetworkSpec spec = box_spec(4.0, 2.0);
    const std::vector<FiberSegment> fibers{{{0.0, 1.0}, {1.5, 1.0}}, {{2.5, 1.0}, {4.0, 1.0}}};
    try {
        mesh_fibers(fibers, spec);
        FAIL() << "expected GenerationFailed";
    } catch (const GenerationFailed& e) {
        EXPECT_NE(std::string(e.what()).find("component"), std::string::npos) << e.what();
    }
}

TEST(Generate, DeterministicForFixedSeed) {
    const NetworkModel a = generate(small_spec(7));
    const NetworkModel b = generate(small_spec(7));
    EXPECT_EQ(a, b);
    EXPECT_EQ(network_to_json(a), network_to_json(b));
    const NetworkModel c = generate(small_spec(8));
    EXPECT_NE(network_to_json(a), network_to_json(c));
}

TEST(Generate, MeshedLengthConservesDepositedLength) {
    const NetworkSpec spec = small_spec(3);
    const std::vector<FiberSegment> fibers = deposit_fibers(spec);
    double clipped = 0.0;
    int full = 0;
    for (const auto& f : fibers) {
        const double len = (f.b - f.a).norm();
        clipped += len;
        EXPECT_LE(len, spec.fiber.length * (1.0 + 1e-12));
        if (std::abs(len - spec.fiber.length) < 1e-12) ++full;
    }
    EXPECT_GT(full, 0);
    const NetworkModel m = mesh_fibers(fibers, spec);
    EXPECT_NEAR(m.generation.deposited_length, clipped, 1e-9 * clipped);
    EXPECT_NEAR(m.generation.meshed_length, m.generation.deposited_length,
                1e-3 * m.generation.deposited_length);
    EXPECT_LE(clipped, fiber_count(spec) * spec.fiber.length);
}

TEST(Generate, ModelInvariants) {
    const NetworkSpec spec = small_spec(11);
    const NetworkModel m = generate(spec);
    EXPECT_NO_THROW(validate_model(m));

    for (const auto& g : element_geometries(m)) EXPECT_GE(g.l_e, spec.l_min);
    for (const auto& x : m.nodes) {
        EXPECT_GE(x.x(), 0.0);
        EXPECT_LE(x.x(), spec.width);
        EXPECT_GE(x.y(), 0.0);
        EXPECT_LE(x.y(), spec.height);
        EXPECT_EQ(x.z(), 0.0);
    }
    // no two distinct nodes closer than l_min (brute force)
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < m.nodes.size(); ++j) {
            ASSERT_GE((m.nodes[i] - m.nodes[j]).norm(), spec.l_min) << i << " " << j;
        }
    }
    std::vector<int> both;
    std::set_intersection(m.bcs.fixed.begin(), m.bcs.fixed.end(), m.bcs.moving.begin(),
                          m.bcs.moving.end(), std::back_inserter(both));
    EXPECT_TRUE(both.empty());
    EXPECT_FALSE(m.bcs.fixed.empty());
    EXPECT_FALSE(m.bcs.moving.empty());
}

TEST(Generate, BondNodesJoinAtLeastThreeElementEnds) {
    const NetworkModel m = generate(small_spec(5));
    std::vector<int> degree(m.nodes.size(), 0);
    std::vector<std::set<int>> fibers(m.nodes.size());
    for (const auto& e : m.elements) {
        for (int n : e.nodes) {
            ++degree[n];
            fibers[n].insert(e.fiber);
        }
    }
    int bonds = 0, low = 0;
    for (std::size_t n = 0; n < m.nodes.size(); ++n) {
        if (fibers[n].size() < 2) continue;
        ++bonds;
        if (degree[n] < 3) ++low;
    }
    EXPECT_GT(bonds, 0);
    // only two fiber tips merged within l_min of each other form a two-element bond
    EXPECT_LE(low, bonds / 100 + 1);
}

TEST(ApplyNotch, ZeroDepthIsIdentity) {
    const NetworkModel m = generate(small_spec());
    NotchSpec notch;
    notch.depth = 0.0;
    EXPECT_EQ(apply_notch(m, notch), m);
}

TEST(ApplyNotch, RemovesElementsCrossingTheTriangle) {
    NetworkSpec spec = box_spec(10.0, 4.0);
    const std::vector<FiberSegment> fibers{{{0.0, 0.5}, {10.0, 0.5}}, {{0.0, 3.0}, {10.0, 3.0}}};
    const NetworkModel m = mesh_fibers(fibers, spec);
    ASSERT_EQ(m.elements.size(), 16u);
    NotchSpec notch;
    notch.depth = 2.0;
    notch.apex_x = 5.0;
    const NetworkModel cut = apply_notch(m, notch);
    EXPECT_EQ(cut.generation.elements_removed_by_notch, 2);
    // the lower fiber no longer connects the grips and is pruned
    EXPECT_EQ(cut.elements.size(), 8u);
    for (const auto& x : cut.nodes) EXPECT_EQ(x.y(), 3.0);
}

TEST(ApplyNotch, FullHeightNotchDisconnects) {
    const NetworkModel m = generate(small_spec());
    NotchSpec notch;
    notch.depth = m.height;
    notch.apex_x = 0.5 * m.width;
    EXPECT_THROW(apply_notch(m, notch), GenerationFailed);
}

TEST(ApplyNotch, GeneratedNotchedSpecimen) {
    NetworkSpec spec = small_spec(13);
    NotchSpec notch;
    notch.depth = 1.5;
    notch.apex_x = 3.0;
    spec.notch = notch;
    const NetworkModel m = generate(spec);
    EXPECT_GT(m.generation.elements_removed_by_notch, 0);
    EXPECT_NO_THROW(validate_model(m));
}

TEST(BoundarySets, GripBands) {
    const NetworkSpec spec = box_spec(2.0, 2.0);
    const NetworkModel m =
        mesh_fibers({{{0.0, 0.5}, {2.0, 1.5}}, {{0.0, 1.5}, {2.0, 0.5}}}, spec);
    const BoundarySets s = boundary_sets(m, 1e-3);
    EXPECT_EQ(s.fixed.size(), 2u);
    EXPECT_EQ(s.moving.size(), 2u);

    NetworkModel inner = m;
    for (auto& x : inner.nodes) x.x() = 0.1 + 0.4 * x.x();
    EXPECT_THROW(boundary_sets(inner, 0.0), GenerationFailed);
}

TEST(NetworkSpec, Validation) {
    NetworkSpec spec;
    spec.width = 0.0;
    EXPECT_THROW(spec.validate(), InvalidConfig);
    spec = NetworkSpec{};
    spec.notch = NotchSpec{180.0, 1.0, 9.0};
    EXPECT_THROW(spec.validate(), InvalidConfig);
}
