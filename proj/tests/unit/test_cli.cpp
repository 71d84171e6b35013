#include <doctest.h>

#include <sstream>

#include "qfp/cli/commands.hpp"
#include "qfp/cli/config.hpp"
#include "qfp/cli/verify.hpp"

using namespace qfp::cli;

TEST_SUITE("cli") {
  TEST_CASE("presets") {
    RunConfig c;
    apply_preset(c, "fig2");
    CHECK(c.ks.size() == 6);
    CHECK(c.optimal_lb_from_k == 4);
    apply_preset(c, "fig3");
    CHECK(c.noise.eta == 0.3);
    CHECK(c.reference_rows.size() == 1);
    CHECK_THROWS(apply_preset(c, "fig9"));
  }

  TEST_CASE("JSON overlays and rejects unknown keys") {
    RunConfig c;
    apply_json(c, nlohmann::json::parse(R"({"preset":"fig3","epsilon":0.001,"noise":{"p_dark":0},"ks":[2]})"));
    CHECK(c.epsilon == 0.001);
    CHECK(c.noise.eta == 0.3);
    CHECK(c.noise.p_dark == 0.0);
    CHECK(c.ks == std::vector<int>{2});
    CHECK_THROWS(apply_json(c, nlohmann::json::parse(R"({"epsilom":0.1})")));
    c.epsilon = 2.0;
    CHECK_THROWS(validate(c));
  }

  TEST_CASE("n grid") {
    RunConfig c;
    const auto g = n_grid(c);
    CHECK(g.size() == 21);
    CHECK(g.front() == 1000);
    CHECK(g[1] == 1778);
    CHECK(g.back() == 100000000);
  }

  TEST_CASE("curves CSV") {
    RunConfig c;
    c.ks = {1, 2};
    c.n_max = 1e3;
    c.workers = 2;
    const auto rows = compute_curves(c);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].k == 1);
    CHECK(rows[1].k == 2);
    std::ostringstream os;
    write_curves_csv(rows, os);
    const std::string s = os.str();
    CHECK(s.rfind("n,k,family,delta_opt,mu,m_k,error_model,qil_bits,bound_method,classical_ref_bits,status\n", 0) == 0);
    CurveRow bad;
    bad.n = 5;
    bad.family = "ring";
    bad.status = "infeasible";
    bad.error_model = "direct";
    bad.classical_ref_bits = 2.5;
    bad.qil_bits = bad.mu = bad.delta_opt = std::nan("");
    std::ostringstream os2;
    write_curves_csv({bad}, os2);
    CHECK(os2.str().find("5,1,ring,,,,direct,,,2.5,infeasible") != std::string::npos);
  }

  TEST_CASE("solve reports infeasibility") {
    RunConfig c;
    c.k = 2;
    c.n = 1000;
    c.mu_cap = 1e-3;
    c.noise = qfp::NoiseModel::lossy_channel();
    std::ostringstream text;
    const auto r = cmd_solve(c, text);
    CHECK(r.at("status") == "infeasible");
    CHECK(r.contains("reason"));
  }

  TEST_CASE("verify suites") {
    for (const auto& name : suite_names()) CHECK(run_suite(name, 1).passed);
    CHECK_THROWS(run_suite("nope", 1));
  }
}
