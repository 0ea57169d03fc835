#include <set>
#include <sstream>
#include <string>

#include "banditcc/experiment.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace banditcc;
using testing::rel_close;

TEST_CASE("seed lists") {
    CHECK(parse_seeds("1..5") == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
    CHECK(parse_seeds("3, 7,9") == std::vector<std::uint64_t>{3, 7, 9});
    CHECK(parse_seeds("2,4..5") == std::vector<std::uint64_t>{2, 4, 5});
    CHECK_THROWS_AS(parse_seeds(""), ConfigError);
    CHECK_THROWS_AS(parse_seeds("5..1"), ConfigError);
    CHECK_THROWS_AS(parse_seeds("x"), ConfigError);
}

TEST_CASE("algorithm expansion") {
    CHECK(expand_algorithms({"reno"}) == std::vector<std::string>{"reno", "reno", "reno", "reno"});
    CHECK(expand_algorithms({"learningcc", "cubic"}) ==
          std::vector<std::string>{"learningcc", "cubic", "learningcc", "cubic"});
    CHECK_THROWS_AS(expand_algorithms({"reno", "cubic", "reno"}), ConfigError);
    CHECK_THROWS_AS(expand_algorithms({"bbr"}), ConfigError);
}

TEST_CASE("config file with a case number") {
    std::istringstream in(R"(# competence check
scenario = competence
case = 3
algo = learningcc, reno
loss = 0.01, 0.02
seeds = 1..3
duration = 30
)");
    const auto runs = parse_config(in);
    REQUIRE(runs.size() == 6);
    CHECK(runs[0].scenario == Scenario::competence);
    CHECK(runs[0].case_label() == "3");
    CHECK(runs[0].algorithm_label() == "learningcc-vs-reno");
    CHECK(runs[0].duration == 30.0);
    CHECK(runs[0].loss_rate == 0.01);
    CHECK(runs[5].loss_rate == 0.02);
    CHECK(runs[5].seed == 3);
    CHECK(runs[0].topology.link("l2").config.bandwidth_bps == 6e6);

    std::set<std::string> hashes;
    for (const auto& r : runs) hashes.insert(r.config_hash());
    CHECK(hashes.size() == runs.size());
    CHECK(runs[0].config_hash() == runs[0].config_hash());
    CHECK(runs[0].config_hash().size() == 16);
}

TEST_CASE("config file with a custom link table") {
    std::istringstream in(R"(case = custom
l1 = 100, 10, 60
l2 = 10, 5, 40
l3 = 100, 10, 60
l4 = 100, 20, 60
l5 = 100, 10, 60
flow1 = learningcc
flow2 = reno
flow3 = cubic
flow4 = reno
)");
    const auto runs = parse_config(in);
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].case_label() == "custom");
    CHECK(runs[0].algorithms == std::vector<std::string>{"learningcc", "reno", "cubic", "reno"});
    CHECK(runs[0].topology.link("l2").config.queue_capacity_bytes() == 50000);
    CHECK(rel_close(runs[0].topology.path_propagation(2), 0.035));
}

TEST_CASE("config errors") {
    const auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_config(in);
    };
    CHECK_THROWS_AS(parse("case = 9\n"), ConfigError);
    CHECK_THROWS_AS(parse("colour = blue\n"), ConfigError);
    CHECK_THROWS_AS(parse("algo = vegas\n"), ConfigError);
    CHECK_THROWS_AS(parse("case = custom\nl1 = 1,1,1\n"), ConfigError);
    CHECK_THROWS_AS(parse("loss = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("duration = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("just text\n"), ConfigError);
    CHECK_THROWS_AS(parse("scenario = everything\n"), ConfigError);
}

TEST_CASE("summary rows round trip") {
    SummaryRow r;
    r.case_label = "4";
    r.algorithm = "learningcc-vs-cubic";
    r.flow_id = "all";
    r.rate_bps = 1.5e6;
    r.mean_owd_ms = 80.25;
    r.jain = 0.97;
    r.utilization = 0.93;
    r.loss_rate = 0.035;
    r.seed = "2";
    r.config_hash = "00ff00ff00ff00ff";
    const auto back = parse_row(format_row(r));
    CHECK(back.case_label == "4");
    CHECK(back.algorithm == r.algorithm);
    CHECK_FALSE(back.ratio);
    CHECK(format_row(r).find(",starved,") != std::string::npos);
    r.ratio = 1.25;
    CHECK(*parse_row(format_row(r)).ratio == 1.25);

    std::ostringstream out;
    write_summary_csv(out, {r, r});
    CHECK(out.str().rfind(std::string(kSummaryHeader) + "\n", 0) == 0);
    std::istringstream in(out.str());
    CHECK(read_summary_csv(in).size() == 2);
}

TEST_CASE("seed aggregation is the arithmetic mean") {
    std::vector<SummaryRow> rows;
    for (int s = 1; s <= 3; ++s) {
        SummaryRow r;
        r.case_label = "1";
        r.algorithm = "reno";
        r.flow_id = "all";
        r.rate_bps = 1e6 * s;
        r.utilization = 0.1 * s;
        r.jain = 0.9;
        r.ratio = s;
        r.seed = std::to_string(s);
        rows.push_back(r);
    }
    rows.push_back(rows[0]);
    rows.back().case_label = "2";
    const auto agg = aggregate_over_seeds(rows);
    REQUIRE(agg.size() == 2);
    CHECK(rel_close(agg[0].rate_bps, 2e6));
    CHECK(rel_close(agg[0].utilization, 0.2));
    CHECK(rel_close(*agg[0].ratio, 2.0));
    CHECK(agg[0].seed == "1;2;3");
    CHECK(agg[1].case_label == "2");
}

TEST_CASE("experiment summary of a short run") {
    RunConfig cfg;
    cfg.case_number = 2;
    cfg.topology = TopologyConfig::table_case(2);
    cfg.algorithms = expand_algorithms({"learningcc", "reno"});
    cfg.duration = 10.0;
    cfg.seed = 4;
    const auto out = run_experiment(cfg);
    const auto& s = out.summary;
    REQUIRE(s.flows.size() == 4);
    CHECK(s.jain > 0.25);
    CHECK(s.jain <= 1.0);
    REQUIRE(s.ratio);
    CHECK(rel_close(*s.ratio, s.flows[0].rate / s.flows[1].rate));
    CHECK(s.utilization > 0.5);
    CHECK(s.utilization <= 1.0);
    CHECK(s.selections > 0);

    const auto row = run_row(s);
    CHECK(row.flow_id == "all");
    CHECK(row.seed == "4");
    CHECK(row.config_hash == cfg.config_hash());
    CHECK(flow_rows(s).size() == 4);

    const auto batch = run_batch({cfg, cfg}, 2);
    CHECK(format_row(run_row(batch[0].summary)) == format_row(row));
    CHECK(format_row(run_row(batch[1].summary)) == format_row(row));
}

TEST_CASE("fluid sweep output") {
    std::ostringstream out;
    write_fluid_sweep(out, default_fluid_sweep());
    const auto text = out.str();
    CHECK(text.rfind(std::string(kFluidHeader) + "\n", 0) == 0);
    CHECK(text.find("learningcc,") != std::string::npos);
    CHECK(text.find("reno,") != std::string::npos);
}
