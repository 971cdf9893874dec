#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include "soscert/datagen.hpp"
#include "soscert/pipeline.hpp"
#include "soscert/poly_text.hpp"
#include "soscert/problem_io.hpp"
#include "test_util.hpp"

using namespace soscert;
using namespace soscert::testutil;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = std::string(SOSCERT_TEST_DIR) + "/fixtures/";

PipelineConfig fast_config(const std::string& out_dir) {
    PipelineConfig cfg;
    cfg.budget_k = 8;
    cfg.timeout_s = 60.0;
    cfg.out_dir = out_dir;
    return cfg;
}

}  // namespace

TEST_CASE("solve: worked example through the replay source") {
    fs::path out = fs::temp_directory_path() / "soscert_solve_quartic";
    fs::remove_all(out);
    ProblemFile pf = read_problem_file(kFixtures + "quartic_2var.poly");
    ReplaySource src(kFixtures + "quartic_2var.replay");
    PipelineReport r = solve(pf.f, "quartic_2var", src, fast_config(out.string()));

    REQUIRE(r.outcome == Outcome::proved);
    CHECK(r.winning_theta == 0.0);
    CHECK(r.lean_status == LeanCheckStatus::skipped);

    // certificate re-verifies from disk
    SosCertificate cert = read_certificate_file(r.certificate_path);
    CHECK(check_certificate(pf.f, cert).ok);

    // the recovered Gram matrix satisfies the worked example's constraint
    // rows exactly: q11 = 2, q22 = 5, q33 + 2 q12 = -1, 2 q13 = 2, 2 q23 = 0
    MonomialBasis b;
    b.nvars = 2;
    b.monomials = {mono({2, 0}), mono({0, 2}), mono({1, 1})};
    TrainingPair tp;
    tp.f = pf.f;
    tp.cert = cert;
    RatMat g = decomposition_gram(tp, b);
    CHECK(g[0][0] == 2);
    CHECK(g[1][1] == 5);
    CHECK(g[2][2] + 2 * g[0][1] == -1);
    CHECK(2 * g[0][2] == 2);
    CHECK(2 * g[1][2] == 0);

    // Lean script exists and matches the template skeleton
    std::ifstream lean(r.lean_path);
    REQUIRE(lean.good());
    std::string script((std::istreambuf_iterator<char>(lean)), std::istreambuf_iterator<char>());
    CHECK(script.find("positivity") != std::string::npos);
    fs::remove_all(out);
}

TEST_CASE("solve: trivial square through the baseline source") {
    fs::path out = fs::temp_directory_path() / "soscert_solve_sq";
    fs::remove_all(out);
    ProblemFile pf = read_problem_file(kFixtures + "square_1var.poly");
    BaselineConfig bc;
    bc.restarts = 8;
    bc.seed = 5;
    BaselineSource src(bc);
    PipelineReport r = solve(pf.f, "square_1var", src, fast_config(out.string()));
    CHECK(r.outcome == Outcome::proved);
    CHECK(r.total_s < 5.0);
    fs::remove_all(out);
}

TEST_CASE("solve: preconditions") {
    BaselineConfig bc;
    BaselineSource src(bc);
    PipelineConfig cfg;
    CHECK_THROWS_AS(solve(Polynomial(1), "zero", src, cfg), std::invalid_argument);
    CHECK_THROWS_AS(solve(parse_polynomial("x1^3", 1), "odd", src, cfg), std::invalid_argument);
}

TEST_CASE("solve: non-SOS control never proves") {
    fs::path out = fs::temp_directory_path() / "soscert_solve_rob";
    fs::remove_all(out);
    ProblemFile pf = read_problem_file(kFixtures + "robinson.poly");

    PipelineConfig cfg = fast_config(out.string());
    cfg.budget_k = 4;
    cfg.timeout_s = 50.0;

    BaselineConfig bc;
    bc.restarts = 4;
    bc.seed = 11;
    BaselineSource baseline(bc);
    PipelineReport r1 = solve(pf.f, "robinson", baseline, cfg);
    CHECK(r1.outcome != Outcome::proved);

    // a replay source feeding near-miss structures must not prove it either
    fs::path replay = fs::temp_directory_path() / "soscert_rob_replay.txt";
    {
        std::ofstream os(replay);
        os << "(x1^3 - x1*x2*x3)^2 + (x2^3 - x1*x2*x3)^2 + (x3^3 - x1*x2*x3)^2\n";
        os << "0.9*(x1^3)^2 + (x2^3)^2 + (x3^3)^2\n";
    }
    ReplaySource rsrc(replay.string());
    PipelineReport r2 = solve(pf.f, "robinson", rsrc, cfg);
    CHECK(r2.outcome != Outcome::proved);
    fs::remove(replay);
    fs::remove_all(out);
}

TEST_CASE("solve: timeout is honored and reported") {
    ProblemFile pf = read_problem_file(kFixtures + "robinson.poly");
    BaselineConfig bc;
    bc.restarts = 50;
    BaselineSource src(bc);
    PipelineConfig cfg;
    cfg.budget_k = 32;
    cfg.timeout_s = 0.05;
    cfg.out_dir.clear();
    PipelineReport r = solve(pf.f, "robinson", src, cfg);
    CHECK(r.outcome == Outcome::timeout);
    CHECK(r.total_s < 5.0);  // within 2x of stage granularity, generously
}

TEST_CASE("bench: deterministic reports, audit, and per-n aggregation") {
    fs::path corpus = fs::temp_directory_path() / "soscert_bench_corpus";
    fs::path out1 = fs::temp_directory_path() / "soscert_bench_run1";
    fs::path out2 = fs::temp_directory_path() / "soscert_bench_run2";
    fs::remove_all(corpus);
    fs::remove_all(out1);
    fs::remove_all(out2);

    GenConfig g;
    g.nvars = 2;
    g.half_degree = 1;
    g.seed = 77;
    g.sparsity = 0.5;
    emit_corpus(g, 6, corpus.string());

    auto run = [&](const fs::path& out) {
        BaselineConfig bc;
        bc.restarts = 10;
        bc.seed = 9;
        BaselineSource src(bc);
        PipelineConfig cfg = fast_config((out / "artifacts").string());
        cfg.timeout_s = 30.0;
        return bench((corpus / "problems").string(), (out / "report.tsv").string(), src, cfg);
    };
    BenchSummary s1 = run(out1);
    BenchSummary s2 = run(out2);

    CHECK(s1.report_tsv == s2.report_tsv);
    std::ifstream r1(out1 / "report.tsv"), r2(out2 / "report.tsv");
    std::string b1((std::istreambuf_iterator<char>(r1)), std::istreambuf_iterator<char>());
    std::string b2((std::istreambuf_iterator<char>(r2)), std::istreambuf_iterator<char>());
    CHECK(b1 == b2);
    CHECK(!b1.empty());

    CHECK(s1.audit_ok);
    CHECK(s1.rows.size() == 6);
    CHECK(s1.report_tsv.find("# aggregate pass rate by nvars") != std::string::npos);

    // empty directory produces an empty report body
    fs::path empty = fs::temp_directory_path() / "soscert_bench_empty";
    fs::create_directories(empty);
    BaselineConfig bc;
    BaselineSource src(bc);
    BenchSummary es = bench(empty.string(), "", src, fast_config(""));
    CHECK(es.rows.empty());

    fs::remove_all(corpus);
    fs::remove_all(out1);
    fs::remove_all(out2);
    fs::remove_all(empty);
}

TEST_CASE("http source: request/response protocol round trip") {
    httplib::Server server;
    std::atomic<int> hits{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        ++hits;
        auto body = nlohmann::json::parse(req.body);
        REQUIRE(body.contains("messages"));
        std::string prompt = body["messages"][0]["content"].get<std::string>();
        CHECK(prompt.find("Original polynomial:") != std::string::npos);
        CHECK(req.get_header_value("Authorization") == "Bearer test-token");
        nlohmann::json reply = {
            {"choices",
             {{{"message", {{"role", "assistant"},
                            {"content", "<SOS Expression>: (x1 + 1)^2"}}}}}}};
        res.set_content(reply.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    setenv("SOSCERT_HTTP_TOKEN", "test-token", 1);
    HttpSourceConfig hc;
    hc.url = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    HttpSource src(hc);
    ConjectureRequest req;
    req.f = parse_polynomial("x1^2 + 2*x1 + 1", 1);
    req.budget_k = 2;
    auto cands = src.propose(req);
    REQUIRE(cands.size() == 2);
    CHECK(cands[0].format_ok);
    CHECK(cands[0].theta == 0.0);
    CHECK(hits == 2);  // one candidate per call at the default setting

    server.stop();
    worker.join();
}

TEST_CASE("http source: malformed completion is kept with infinite theta") {
    httplib::Server server;
    server.Post("/complete", [&](const httplib::Request&, httplib::Response& res) {
        nlohmann::json reply = {{"content", "I could not find a decomposition, sorry."}};
        res.set_content(reply.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpSourceConfig hc;
    hc.url = "http://127.0.0.1:" + std::to_string(port) + "/complete";
    HttpSource src(hc);
    ConjectureRequest req;
    req.f = parse_polynomial("x1^2", 1);
    req.budget_k = 1;
    auto cands = src.propose(req);
    REQUIRE(cands.size() == 1);
    CHECK(!cands[0].format_ok);
    CHECK(std::isinf(cands[0].theta));

    server.stop();
    worker.join();
}

TEST_CASE("http source: end-to-end solve through the wire") {
    httplib::Server server;
    server.Post("/complete", [&](const httplib::Request&, httplib::Response& res) {
        nlohmann::json reply = {
            {"choices", {{{"text", "<SOS Expression>: 0.5*(2*x1^2 - 3*x2^2 + x1*x2)^2 + "
                                   "0.5*(x2^2 + 3*x1*x2)^2"}}}}};
        res.set_content(reply.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    fs::path out = fs::temp_directory_path() / "soscert_http_solve";
    fs::remove_all(out);
    HttpSourceConfig hc;
    hc.url = "http://127.0.0.1:" + std::to_string(port) + "/complete";
    HttpSource src(hc);
    ProblemFile pf = read_problem_file(kFixtures + "quartic_2var.poly");
    PipelineConfig cfg = fast_config(out.string());
    cfg.budget_k = 1;
    PipelineReport r = solve(pf.f, "quartic_http", src, cfg);
    CHECK(r.outcome == Outcome::proved);

    server.stop();
    worker.join();
    fs::remove_all(out);
}

TEST_CASE("problem files: metadata and nvars inference") {
    ProblemFile pf = parse_problem_text("# nvars: 3\n# source: test\nx1^2 + x3^2\n");
    CHECK(pf.f.nvars() == 3);
    CHECK(pf.metadata.at("source") == "test");

    ProblemFile inferred = parse_problem_text("x1^2 + x2^4\n");
    CHECK(inferred.f.nvars() == 2);

    CHECK_THROWS(parse_problem_text("# only a comment\n"));
}
