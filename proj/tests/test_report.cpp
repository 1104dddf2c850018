#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "wpcn/error.hpp"
#include "wpcn/report.hpp"

using namespace wpcn;

namespace {

std::vector<CurvePoint> sample_points() {
    SweepSpec s;
    s.base_params.n_relays = 5;
    s.base_params.harvest_efficiency = 0.1;
    s.base_params.decode_set_cap = 2;
    s.policy_ids = {PolicyId::SrsNcsi, PolicyId::MrsAcsi};
    s.axis_values = {0.25, 1.0 / 3.0, 1.5};
    s.slots_per_point = 3'000;
    s.replications = 2;
    s.base_seed = 123456789012345ULL;
    return run_sweep(s);
}

}  // namespace

TEST_CASE("CSV re-parses into the points that produced it") {
    const auto points = sample_points();
    std::stringstream ss;
    write_csv(ss, points);
    const std::string text = ss.str();
    CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);

    const auto back = read_csv(ss);
    REQUIRE(back.size() == points.size());
    for (std::size_t i = 0; i < points.size(); ++i) CHECK(same_csv_fields(points[i], back[i]));
}

TEST_CASE("format_double round-trips arbitrary doubles") {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int k = 0; k < 10'000; ++k) {
        const double x = u(gen) * std::pow(10.0, static_cast<int>(gen() % 40) - 20);
        std::istringstream is(format_double(x));
        double y = 0;
        is >> y;
        REQUIRE(x == y);
    }
}

TEST_CASE("malformed CSV is rejected") {
    std::istringstream no_header("srs-ncsi,rate_target,1,10,1,0.1,1,10,1,0.5,0.1,0,0,0.5,1\n");
    CHECK_THROWS_AS(read_csv(no_header), FormatError);

    std::istringstream short_row(std::string(kCsvHeader) + "\nsrs-ncsi,rate_target,1\n");
    CHECK_THROWS_AS(read_csv(short_row), FormatError);

    std::istringstream bad_policy(std::string(kCsvHeader) +
                                  "\nsrs-x,rate_target,1,10,1,0.1,1,10,1,0.5,0.1,0,0,0.5,1\n");
    CHECK_THROWS_AS(read_csv(bad_policy), FormatError);

    std::istringstream bad_number(std::string(kCsvHeader) +
                                  "\nsrs-ncsi,rate_target,one,10,1,0.1,1,10,1,0.5,0.1,0,0,0.5,1\n");
    CHECK_THROWS_AS(read_csv(bad_number), FormatError);
}

TEST_CASE("JSON lines carry the CSV fields") {
    const auto points = sample_points();
    std::stringstream ss;
    write_json_lines(ss, points);
    std::string line;
    std::size_t i = 0;
    while (std::getline(ss, line)) {
        const auto j = nlohmann::json::parse(line);
        CHECK(j.at("policy").get<std::string>() == to_string(points[i].policy));
        CHECK(j.at("outage_prob").get<double>() == points[i].outage_prob);
        CHECK(j.at("base_seed").get<std::uint64_t>() == points[i].base_seed);
        CHECK(j.at("replication_seeds").size() == 2);
        for (const char* key : {"axis", "axis_value", "N", "M", "eta", "R", "slots", "replications", "ci95",
                                "cause_first_hop_frac", "cause_energy_frac", "cause_second_hop_frac"}) {
            CHECK(j.contains(key));
        }
        ++i;
    }
    CHECK(i == points.size());
}

TEST_CASE("gnuplot output has one block per curve") {
    const auto points = sample_points();
    std::stringstream ss;
    write_gnuplot(ss, points);
    const std::string text = ss.str();
    CHECK(text.find("# policy=srs-ncsi N=5") != std::string::npos);
    CHECK(text.find("# policy=mrs-acsi N=5 M=2") != std::string::npos);
    CHECK(text.find("\n\n\n#") != std::string::npos);

    std::size_t data_lines = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) data_lines += !line.empty() && line[0] != '#';
    CHECK(data_lines == points.size());
}

TEST_CASE("simulation result as JSON") {
    SystemParams p;
    const auto r = simulate(p, PolicyId::SrsNcsi, 1'000, 5);
    const auto j = nlohmann::json::parse(to_json(r, p, PolicyId::SrsNcsi));
    CHECK(j.at("outage_prob").get<double>() == r.outage_prob);
    CHECK(j.at("seed").get<std::uint64_t>() == 5);
    CHECK(j.at("policy") == "srs-ncsi");
}
