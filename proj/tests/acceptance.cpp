// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qmod/qmod.hpp"

using namespace qmod;

namespace {

struct outcome
{
    bool ok = true;
    std::string detail;
};

class criterion_log
{
public:
    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok_ = false;
            if (failures_++ < 5)
                detail_ << (detail_.tellp() > 0 ? "; " : "") << what;
        }
    }
    void note(const std::string& what) { notes_ << (notes_.tellp() > 0 ? "; " : "") << what; }
    outcome result() const
    {
        std::string d = ok_ ? notes_.str() : detail_.str();
        if (!ok_ && failures_ > 5)
            d += " (+" + std::to_string(failures_ - 5) + " more)";
        return {ok_, d};
    }

private:
    bool ok_ = true;
    int failures_ = 0;
    std::ostringstream detail_, notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void require_report(criterion_log& log, const congruence_report& r, const std::string& label)
{
    log.require(r.passed(), label + ": " + std::to_string(r.violations.size()) + " violations");
    log.require(r.checked > 0, label + ": empty grid");
}

std::string fmt_seconds(double s)
{
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << s << " s";
    return o.str();
}

const std::map<std::int64_t, std::map<std::int64_t, long>> printed_rows = {
    {2, {{-2, 1}, {-1, 2}, {0, 0}, {1, 5}, {2, 8}, {3, 1}, {4, 7}, {5, -11}}},
    {3, {{-3, 1}, {-2, 0}, {-1, 1}, {0, 0}, {1, 2}, {2, 2}, {3, 16}, {4, 16}, {5, 18}}},
    {4, {{-4, 1}, {-3, 0}, {-2, 0}, {-1, -2}, {0, 0}, {1, 6}, {2, 3}, {3, 18}, {4, -42}}},
    {5, {{-5, 1}, {-4, 0}, {-3, 0}, {-2, 0}, {-1, -1}, {0, 0}, {1, -14}, {2, -16}, {3, 34}}},
};
const std::vector<long> printed_X = {1, 2, 4, 5, 8, 1, 7, -11};      // q^-2 .. q^5
const std::vector<long> printed_Y = {1, 3, 7, 12, 17, 26, 19, 37, -15}; // q^-3 .. q^5

outcome table_rows()
{
    criterion_log log;
    const auto t0 = std::chrono::steady_clock::now();
    const basis_table t = build_genus1_basis(11, 5, 6);
    log.require(t.element(0) == int_series::one(6), "f_{11,0} != 1");
    log.require(t.element(1).is_zero(), "f_{11,1} != 0");
    for (const auto& [m, row] : printed_rows)
        for (const auto& [e, c] : row)
            log.require(t.coeff(m, e) == c, "m=" + std::to_string(m) + " q^" + std::to_string(e) + ": got "
                                                + t.coeff(m, e).get_str() + ", printed " + std::to_string(c));
    const double s = seconds_since(t0);
    log.require(s < 10, "took " + fmt_seconds(s));
    log.note("f_{11,0..5} match all printed coefficients in " + fmt_seconds(s));
    return log.result();
}

outcome generator_recovery()
{
    criterion_log log;
    const std::int64_t P = 40;
    const auto f = newform_series(11, P + 4);
    const auto g = solve_xy(f, find_model(newform_series(11, 64), 11), P);
    log.require(g.x.coeff(-2) == 1 && g.x.coeff(-1) == 2, "x does not start q^-2 + 2q^-1");
    for (std::int64_t n = 1; n <= 5; ++n)
        log.require(g.x.coeff(n) == printed_X[static_cast<std::size_t>(n + 2)], "x coefficient at q^" + std::to_string(n));
    const int_series one = int_series::one(P);
    const int_series X = g.x + one * integer(integer(printed_X[2]) - g.x.coeff(0));
    const int_series my = -g.y;
    const integer s = integer(printed_Y[1]) - my.coeff(-2);
    const integer c = integer(printed_Y[3]) - my.coeff(0) - s * X.coeff(0);
    const int_series Y = my + X * s + one * c;
    for (std::size_t i = 0; i < printed_Y.size(); ++i)
        log.require(Y.coeff(static_cast<std::int64_t>(i) - 3) == printed_Y[i], "Y prefix at q^" + std::to_string(int(i) - 3));
    const basis_table b = build_genus1_basis(g, 11, 4, P - 4);
    // printed relation against Y' = -y + s'X + t': the residual must be -4s'X - 4t'
    const int_series d = b.element(4) - X * X - g.y * integer(4) + X * integer(4) + one * integer(36);
    log.require(divisible(d.coeff(-2), 4), "residual at q^-2 not divisible by 4");
    const integer s2 = integer(-d.coeff(-2) / 4);
    const integer t2 = integer((-d.coeff(0) - integer(4) * s2 * X.coeff(0)) / 4);
    const int_series Y2 = my + X * s2 + one * t2;
    const int_series rel = b.element(4) - (X * X - Y2 * integer(4) - X * integer(4) - one * integer(36));
    log.require(rel.is_zero(), "f_{11,4} - (X^2 - 4Y - 4X - 36) nonzero at q^" + std::to_string(rel.valuation()));
    // with the prefix-matched Y the same element is X^2 - 4Y - 4
    const int_series rel_prefix = b.element(4) - (X * X - Y * integer(4) - one * integer(4));
    log.require(rel_prefix.is_zero(), "f_{11,4} - (X^2 - 4Y - 4) nonzero");
    log.note("Y = -y + " + s.get_str() + " X + (" + c.get_str() + ") fits the printed prefix; X^2 - 4Y - 4X - 36 holds with Y = -y + " +
             s2.get_str() + " X + (" + t2.get_str() + ") through q^" + std::to_string(rel.precision() - 1));
    return log.result();
}

outcome timed_suite(const std::function<congruence_report()>& run, double limit, const std::string& label)
{
    criterion_log log;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = run();
    const double s = seconds_since(t0);
    require_report(log, r, label);
    if (limit > 0)
        log.require(s < limit, label + " took " + fmt_seconds(s));
    log.note(label + ": " + std::to_string(r.checked) + " checks in " + fmt_seconds(s));
    return log.result();
}

outcome atkin()
{
    criterion_log log;
    const auto r = check_atkin_11(2, 5000);
    require_report(log, r, "atkin11");
    const int_series j = j_series(122);
    log.require(!divisible(j.coeff(11), 121), "b(11) divisible by 11^2");
    log.require(!divisible(j.coeff(121), 1331), "b(121) divisible by 11^3");
    log.note(std::to_string(r.checked) + " checks, b(11) mod 121 = " + residue(j.coeff(11), 121).get_str()
             + ", b(121) mod 1331 = " + residue(j.coeff(121), 1331).get_str());
    return log.result();
}

outcome thm_b11()
{
    criterion_log log;
    const auto r = check_thm_b11(1, 2, 5, 20, 2500);
    require_report(log, r, "thm-b11");
    log.require(r.precision >= 2500, "precision " + std::to_string(r.precision));
    const auto table = shared_basis_cache().level1(55, 2500);
    log.require(table->max_index() >= 55, "level-one table below index 55");
    log.note(std::to_string(r.checked) + " checks at precision " + std::to_string(r.precision));
    return log.result();
}

outcome aj()
{
    criterion_log log;
    const std::map<std::int64_t, std::pair<int, int>> shapes = {{2, {3, 8}}, {3, {2, 3}}, {5, {1, 1}}, {7, {1, 0}}};
    std::int64_t checked = 0;
    for (const auto& [p, shape] : shapes) {
        log.require(aj_modulus_shape(p) == shape, "modulus shape for p=" + std::to_string(p));
        const auto r = check_aj(p, 0, 2, 5, 20);
        require_report(log, r, "aj p=" + std::to_string(p));
        checked += r.checked;
    }
    log.note(std::to_string(checked) + " checks, moduli 2^(3g+8), 3^(2g+3), 5^(g+1), 7^g");
    return log.result();
}

outcome griffin()
{
    criterion_log log;
    std::int64_t checked = 0;
    for (std::int64_t p : {2, 3, 5, 7}) {
        const auto r = check_griffin(p);
        require_report(log, r, "griffin p=" + std::to_string(p));
        const auto& counts = r.params["branchCounts"];
        log.require(counts.size() == (p == 2 ? 5u : 3u), "p=" + std::to_string(p) + " branch set incomplete");
        for (const auto& [name, n] : counts.items())
            log.require(n.get<std::int64_t>() >= 5, "p=" + std::to_string(p) + " branch " + name + " has "
                                                      + std::to_string(n.get<std::int64_t>()) + " points");
        checked += r.checked;
    }
    log.note(std::to_string(checked) + " checks, every branch with at least 5 points");
    return log.result();
}

outcome thm_f11()
{
    criterion_log log;
    const auto r = check_thm_f11(0, 2, 12, 30, 121 * 30);
    require_report(log, r, "thm-f11");
    log.require(r.precision >= 121 * 30, "precision " + std::to_string(r.precision));
    log.note(std::to_string(r.checked) + " checks at precision " + std::to_string(r.precision));
    return log.result();
}

outcome thm_genus1()
{
    criterion_log log;
    std::int64_t checked = 0;
    for (std::int64_t n : genus_one_levels)
        for (std::int64_t p : {2, 3}) {
            const auto r = check_thm_genus1(n, p, 2, 10, 10);
            require_report(log, r, "N=" + std::to_string(n) + " p=" + std::to_string(p));
            checked += r.checked;
        }
    log.note(std::to_string(checked) + " checks over all twelve levels");
    return log.result();
}

outcome pplication()
{
    criterion_log log;
    for (std::int64_t p : {2, 3, 5, 7}) {
        const auto r = check_pplication(p, 10, 101);
        require_report(log, r, "p=" + std::to_string(p));
    }
    log.note("residuals constant through q^100 for m <= 10");
    return log.result();
}

outcome cor_c11()
{
    criterion_log log;
    const auto r = check_cor_c11(1, 3, 5, 5);
    require_report(log, r, "cor-c11");
    log.require(r.checked == 3 * 25, "grid has " + std::to_string(r.checked) + " points, expected 75");
    log.note(std::to_string(r.checked) + " checks");
    return log.result();
}

outcome newforms()
{
    criterion_log log;
    int eta_levels = 0;
    for (std::int64_t n : genus_one_levels) {
        if (auto spec = newform_eta_spec(n)) {
            ++eta_levels;
            const auto bad = eigenform_violations(eta_quotient(*spec, 201), n, 200);
            log.require(bad.empty(), "N=" + std::to_string(n) + ": " + (bad.empty() ? "" : bad.front()));
        }
        try {
            const auto m = find_model(newform_series(n, 64), n);
            log.require(m.discriminant() != 0, "N=" + std::to_string(n) + " singular model");
        } catch (const error& e) {
            log.require(false, "N=" + std::to_string(n) + ": " + e.what());
        }
    }
    log.require(eta_levels == 8, "expected eight eta-quotient newforms");
    log.note("8 eta newforms sane to n=200; one model for each of 12 levels");
    return log.result();
}

outcome kernel()
{
    criterion_log log;
    std::mt19937_64 rng(20261019);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = oracle::random_series(rng), b = oracle::random_series(rng), c = oracle::random_series(rng);
        const std::string at = "trial " + std::to_string(trial);
        log.require((a * b) * c == a * (b * c), at + " associativity");
        log.require(identical(a * b, b * a), at + " commutativity");
        log.require(a * (b + c) == a * b + a * c, at + " distributivity");
        const auto u = oracle::random_unit_series(rng);
        log.require(u * invert(u) == int_series::one(u.precision() - u.valuation()), at + " invert");
        for (std::int64_t p : {2, 3, 5, 7}) {
            log.require(identical(u_p(upscale(a, p), p), a), at + " u_p(upscale)");
            log.require(u_p(upscale(a, p) * b, p) == a * u_p(b, p), at + " u_p module map");
        }
    }
    const std::int64_t P = 501;
    const auto e4 = eisenstein(4, P), e6 = eisenstein(6, P);
    log.require(e4 * e4 * e4 - e6 * e6 == delta_series(P) * integer(1728), "E4^3 - E6^2 != 1728 Delta");
    log.note("500 random trials; E4^3 - E6^2 = 1728 Delta through q^500");
    return log.result();
}

outcome verify_all()
{
    criterion_log log;
    const auto dir = std::filesystem::temp_directory_path() / ("qmod_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const std::string cmd =
        std::string("'") + QMOD_CLI_PATH + "' verify all --no-timing --out '" + dir.string() + "' > '" + (dir / "stdout.txt").string() + "' 2>&1";
    const auto t0 = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    const double s = seconds_since(t0);
    rusage usage{};
    getrusage(RUSAGE_CHILDREN, &usage);
    const double peak_mb = static_cast<double>(usage.ru_maxrss) / 1024.0; // ru_maxrss is in KiB
    log.require(status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0,
                "verify all exited with status " + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1));
    std::size_t reports = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json")
            ++reports;
    log.require(reports == suite_names().size(), std::to_string(reports) + " report files");
    log.require(s <= 300, "took " + fmt_seconds(s));
    log.require(peak_mb <= 2048, "peak RSS " + std::to_string(static_cast<long>(peak_mb)) + " MiB");
    log.note(std::to_string(reports) + " suites in " + fmt_seconds(s) + ", peak RSS "
             + std::to_string(static_cast<long>(peak_mb)) + " MiB");
    std::filesystem::remove_all(dir);
    return log.result();
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<outcome()>>> criteria = {
        {"level-11 table rows", table_rows},
        {"generator recovery", generator_recovery},
        {"partition congruences",
         [] { return timed_suite([] { return check_partition_ramanujan(2000); }, 10, "partition"); }},
        {"tau congruence and Hecke recursion",
         [] { return timed_suite([] { return check_tau(2000, 13, 2); }, 30, "tau"); }},
        {"Lehner congruences", [] { return timed_suite([] { return check_lehner_small(5000); }, 60, "lehner"); }},
        {"Atkin congruence and sharpness", atkin},
        {"level-1 eleven-adic grid", thm_b11},
        {"genus-zero grids", aj},
        {"Griffin branches", griffin},
        {"level-11 genus-one grid", thm_f11},
        {"genus-one levels", thm_genus1},
        {"p-plication residual", pplication},
        {"mock coefficient combination", cor_c11},
        {"newform sanity and models", newforms},
        {"series kernel properties", kernel},
        {"verify all within budget", verify_all},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok)
            ++failed;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " ("
                  << fmt_seconds(seconds_since(t0)) << ")" << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
