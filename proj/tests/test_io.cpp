#include "support.hpp"

#include "bcinv/io.hpp"

#include <sstream>

using namespace testing;

TEST_SUITE("io") {

TEST_CASE("system JSON round trip")
{
    JacobiSystem j = random_jacobi(42, 3);
    System back = system_from_json(nlohmann::json::parse(to_json(j).dump()));
    const JacobiSystem& jb = std::get<JacobiSystem>(back);
    CHECK(jb.offdiag == j.offdiag);
    CHECK(jb.diag == j.diag);

    StieltjesString s = random_string(42, 2);
    nlohmann::json js = to_json(s);
    CHECK(js["lengths"].size() == 3);
    CHECK(js["masses"].size() == 2);
    System sback = system_from_json(nlohmann::json::parse(js.dump()));
    const StieltjesString& sb = std::get<StieltjesString>(sback);
    CHECK(sb.lengths == s.lengths);
    CHECK(sb.masses == s.masses);

    CHECK_THROWS_AS(system_from_json(nlohmann::json{{"kind", "membrane"}}), Error);
    CHECK_THROWS_AS(system_from_json(nlohmann::json{{"kind", "jacobi"}, {"a", {1}}}), Error);
    CHECK_THROWS_AS(system_from_json(nlohmann::json{{"kind", "jacobi"}, {"a", {-1}}, {"b", {0, 0}}}), Error);
}

TEST_CASE("spectral JSON")
{
    SpectralData sd = eigen_jacobi(jac({1}, {0, 0})).first;
    SpectralData back = spectral_from_json(nlohmann::json::parse(to_json(sd).dump()));
    // JSON carries doubles
    CHECK(max_relative_error(back.lambdas, sd.lambdas) <= Real(1e-16));
    CHECK(max_relative_error(back.rhos, sd.rhos) <= Real(1e-16));
}

TEST_CASE("CSV is bitwise lossless")
{
    TimeGrid g(Real(1), 64);
    SampledSignal r = response_function(eigen_jacobi(random_jacobi(3, 4)).first, g.doubled());
    std::stringstream ss;
    write_signal_csv(ss, r, "kind=jacobi,T=1,n_t=64");
    CsvSignal back = read_signal_csv(ss);
    CHECK(back.signal.grid == r.grid);
    for (std::size_t i = 0; i < r.values.size(); ++i) CHECK(back.signal.values[i] == r.values[i]);
    CHECK(back.meta.at("kind") == "jacobi");
    CHECK(back.meta.at("n_t") == "64");
    Real x = Real(1) / 3;
    CHECK(parse_real(format_real(x)) == x);
}

TEST_CASE("CSV errors")
{
    std::stringstream nohdr("0,0\n1,1\n");
    CHECK_THROWS_AS(read_signal_csv(nohdr), Error);
    std::stringstream uneven("t,value\n0,0\n0.5,1\n2,3\n");
    CHECK_THROWS_AS(read_signal_csv(uneven), Error);
    std::stringstream junk("t,value\n0,0\n1,abc\n");
    CHECK_THROWS_AS(read_signal_csv(junk), Error);
    std::stringstream one("t,value\n0,0\n");
    CHECK_THROWS_AS(read_signal_csv(one), Error);
}

TEST_CASE("trajectory and kernel CSV")
{
    TimeGrid g(Real(1), 4);
    auto [sd, basis] = eigen_jacobi(jac({1}, {0, 0}));
    Trajectory tr = forward_spectral(sd, basis, signal(g, [](const Real&) { return Real(1); }));
    std::stringstream a;
    write_trajectory_csv(a, tr);
    std::string first;
    std::getline(a, first);
    CHECK(first == "t,u1,u2");
    std::stringstream b;
    write_kernel_csv(b, connecting_spectral(sd, g).kernel);
    int lines = 0;
    for (std::string l; std::getline(b, l);) ++lines;
    CHECK(lines == 1 + 25);
}

TEST_CASE("report JSON")
{
    TimeGrid g(Real(1), 512);
    CharacterizationReport rep = characterize_response(signal(g.doubled(), [](const Real& t) { return 2 * t; }),
                                                       SystemKind::Jacobi);
    nlohmann::json j = to_json(rep);
    CHECK(j["admissible"] == false);
    CHECK(j["failures"][0] == "NormalizationViolated");
    MethodComparison mc = compare_methods(jac({}, {0}), g);
    nlohmann::json c = to_json(mc, false);
    CHECK(c["methods"].size() == 4);
    CHECK_FALSE(c["methods"][0].contains("wall_seconds"));
}

} // TEST_SUITE
