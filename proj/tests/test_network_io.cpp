#include <gtest/gtest.h>

#include <filesystem>

#include "fiberfrac/errors.hpp"
#include "fiberfrac/netgen.hpp"
#include "fiberfrac/network_io.hpp"
#include "fiberfrac/scenarios.hpp"

using namespace fiberfrac;

namespace {

NetworkModel sample_network() {
    NetworkSpec spec;
    spec.width = 5.0;
    spec.height = 2.5;
    spec.seed = 9;
    return generate(spec);
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
    const auto pos = s.find(from);
    if (pos != std::string::npos) s.replace(pos, from.size(), to);
    return s;
}

}  // namespace

TEST(NetworkIo, RoundTripIsLossless) {
    const NetworkModel m = sample_network();
    const std::string text = network_to_json(m);
    const NetworkModel back = network_from_json(text);
    EXPECT_EQ(back, m);
    EXPECT_EQ(network_to_json(back), text);
}

TEST(NetworkIo, RoundTripCantilever) {
    const NetworkModel m = cantilever_model(10, 0.05);
    EXPECT_EQ(network_from_json(network_to_json(m)), m);
}

TEST(NetworkIo, FileRoundTrip) {
    const NetworkModel m = sample_network();
    const auto path = std::filesystem::temp_directory_path() / "fiberfrac_network_io_test.json";
    write_network(m, path);
    EXPECT_EQ(read_network(path), m);
    std::filesystem::remove(path);
    EXPECT_THROW(read_network(path), FormatError);
}

TEST(NetworkIo, RejectsMalformedDocuments) {
    const std::string good = network_to_json(cantilever_model(2, 0.1));
    EXPECT_THROW(network_from_json("{not json"), FormatError);
    EXPECT_THROW(network_from_json("{}"), FormatError);
    EXPECT_THROW(network_from_json(replace_once(good, "\"version\": 1", "\"version\": 2")), FormatError);
    EXPECT_THROW(network_from_json(replace_once(good, "fiberfrac-network", "other")), FormatError);
    EXPECT_THROW(network_from_json(replace_once(good, "\"n2\": 1", "\"n2\": 99")), FormatError);
    EXPECT_THROW(network_from_json(replace_once(good, "\"G_f\": 0.1", "\"G_f\": 0.3")), FormatError);
}
