// qmod: build q-series and bases, run verification suites, validate seed data.
//
// Exit codes: 0 success / all suites pass, 1 a suite or seed check found
// violations, 2 bad input or operational error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "qmod/catalog.hpp"
#include "qmod/qmod.hpp"

namespace fs = std::filesystem;
using namespace qmod;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violations = 1;
constexpr int exit_error = 2;

struct range
{
    std::int64_t lo, hi;
};

range parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw domain_error("range must look like a..b, got '" + text + "'");
    const range r{detail::parse_int(text.substr(0, dots), "range start"),
                  detail::parse_int(text.substr(dots + 2), "range end")};
    if (r.lo > r.hi)
        throw domain_error("empty range " + text);
    return r;
}

void write_output(const std::string& path, const std::string& content)
{
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw error("cannot write " + path);
    out << content;
}

void require_format(const std::string& format)
{
    if (format != "text" && format != "csv" && format != "json")
        throw domain_error("unknown format '" + format + "' (text, csv, json)");
}

// ---------------------------------------------------------------------------
// series

struct series_options
{
    std::string spec;
    std::int64_t precision = 0;
    std::string range_text;
    std::string format = "text";
    std::string out;
};

int cmd_series(const series_options& o, const fs::path& data_dir)
{
    require_format(o.format);
    std::optional<range> want;
    if (!o.range_text.empty())
        want = parse_range(o.range_text);
    std::int64_t precision = o.precision;
    if (precision == 0)
        precision = want ? std::max<std::int64_t>(want->hi + 1, 1) : 20;
    if (precision < 1)
        throw domain_error("precision must be positive");

    const named_series s = lookup_series(o.spec, precision, data_dir);
    const std::int64_t lo = want ? want->lo : std::min<std::int64_t>(s.series.valuation(), s.series.precision());
    const std::int64_t hi = want ? want->hi : s.series.precision() - 1;
    if (hi >= s.series.precision())
        throw precision_exceeded(hi, s.series.precision());

    std::ostringstream out;
    const std::string index = s.index ? std::to_string(*s.index) : "";
    if (o.format == "csv") {
        out << "level,kind,m,n,coefficient\n";
        for (std::int64_t n = lo; n <= hi; ++n)
            out << s.level << "," << s.kind << "," << index << "," << n << "," << s.series.coeff(n).get_str() << "\n";
    } else if (o.format == "json") {
        ordered_json j;
        j["spec"] = s.spec;
        j["level"] = s.level;
        j["kind"] = s.kind;
        j["m"] = s.index ? ordered_json(*s.index) : ordered_json(nullptr);
        j["precision"] = s.series.precision();
        ordered_json rows = ordered_json::array();
        for (std::int64_t n = lo; n <= hi; ++n)
            rows.push_back({{"n", n}, {"coefficient", s.series.coeff(n).get_str()}});
        j["coefficients"] = rows;
        out << j.dump(2) << "\n";
    } else {
        for (std::int64_t n = lo; n <= hi; ++n)
            out << n << " " << s.series.coeff(n).get_str() << "\n";
    }
    write_output(o.out, out.str());
    return exit_ok;
}

// ---------------------------------------------------------------------------
// export-basis

struct export_options
{
    std::string kind = "level1";
    std::int64_t level = 1;
    std::int64_t max_index = 5;
    std::int64_t precision = 20;
    std::string format = "csv";
    std::string out;
};

int cmd_export_basis(const export_options& o, const fs::path& data_dir)
{
    if (o.format != "csv" && o.format != "json")
        throw domain_error("export-basis writes csv or json");
    const basis_table t = lookup_basis(o.kind, o.level, o.max_index, o.precision, data_dir);
    std::ostringstream out;
    if (o.format == "csv") {
        out << "level,kind,m,n,coefficient\n";
        for (std::int64_t m = 0; m <= t.max_index(); ++m)
            for (std::int64_t n = -m; n < t.precision; ++n)
                out << t.level << "," << to_string(t.kind) << "," << m << "," << n << "," << t.coeff(m, n).get_str()
                    << "\n";
    } else {
        ordered_json rows = ordered_json::array();
        for (std::int64_t m = 0; m <= t.max_index(); ++m)
            for (std::int64_t n = -m; n < t.precision; ++n)
                rows.push_back({{"level", t.level},
                                {"kind", to_string(t.kind)},
                                {"m", m},
                                {"n", n},
                                {"coefficient", t.coeff(m, n).get_str()}});
        out << rows.dump(1) << "\n";
    }
    write_output(o.out, out.str());
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

struct verify_options
{
    std::string suite;
    std::vector<std::string> extras;
    std::int64_t precision = 0;
    std::string out;
    std::string format; // empty: text on stdout, json in files
    unsigned jobs = 1;
    bool no_timing = false;
};

std::map<std::string, std::int64_t> parse_overrides(const std::vector<std::string>& args)
{
    std::map<std::string, std::int64_t> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string key = args[i];
        if (key.rfind("--", 0) != 0)
            throw domain_error("unexpected argument '" + key + "'");
        key = key.substr(2);
        std::string value;
        if (const auto eq = key.find('='); eq != std::string::npos) {
            value = key.substr(eq + 1);
            key = key.substr(0, eq);
        } else {
            if (i + 1 >= args.size())
                throw domain_error("parameter --" + key + " needs a value");
            value = args[++i];
        }
        out[key] = detail::parse_int(value, "value of --" + key);
    }
    return out;
}

std::string render(const std::vector<congruence_report>& reports, const std::string& format, bool as_array)
{
    std::ostringstream out;
    if (format == "json") {
        if (as_array) {
            ordered_json arr = ordered_json::array();
            for (const auto& r : reports)
                arr.push_back(r.to_json());
            out << arr.dump(2) << "\n";
        } else {
            out << reports.front().to_json().dump(2) << "\n";
        }
    } else if (format == "csv") {
        out << congruence_report::csv_header() << "\n";
        for (const auto& r : reports)
            out << r.to_csv_row() << "\n";
    } else {
        for (const auto& r : reports)
            out << r.to_text();
    }
    return out.str();
}

std::string extension(const std::string& format) { return format == "text" ? "txt" : format; }

int cmd_verify(const verify_options& o, const fs::path& data_dir)
{
    const std::string format = o.format.empty() ? (o.out.empty() ? "text" : "json") : o.format;
    require_format(format);
    const auto overrides = parse_overrides(o.extras);
    const bool all = o.suite == "all";

    std::vector<suite_config> configs;
    const std::vector<std::string> names = all ? suite_names() : std::vector<std::string>{o.suite};
    for (const auto& name : names) {
        suite_config c;
        c.suite = name;
        c.precision = o.precision;
        c.data_dir = data_dir;
        const suite_definition& def = find_suite(name);
        for (const auto& [key, value] : overrides) {
            const bool known = std::any_of(def.params.begin(), def.params.end(), [&](const auto& p) { return p.key == key; });
            if (known || !all)
                c.overrides[key] = value;
        }
        configs.push_back(std::move(c));
    }
    if (all)
        for (const auto& [key, value] : overrides) {
            bool used = false;
            for (const auto& c : configs)
                used = used || c.overrides.count(key);
            if (!used)
                throw domain_error("no suite has a parameter '" + key + "'");
        }

    auto reports = run_suites(configs, o.jobs);
    bool pass = true;
    for (auto& r : reports) {
        if (o.no_timing)
            r.millis = 0;
        pass = pass && r.passed();
    }

    if (o.out.empty()) {
        std::cout << render(reports, format, all);
    } else {
        const fs::path out(o.out);
        if (all && (fs::is_directory(out) || o.out.back() == '/')) {
            fs::create_directories(out);
            for (const auto& r : reports)
                write_output((out / (r.suite + "." + extension(format))).string(), render({r}, format, false));
        } else {
            write_output(o.out, render(reports, format, all));
        }
        std::cout << render(reports, "text", all);
    }
    return pass ? exit_ok : exit_violations;
}

// ---------------------------------------------------------------------------
// seed-validate

int cmd_seed_validate(const std::string& path, const fs::path& data_dir)
{
    const newform_seed seed = load_seed(path);
    require_genus_one_level(seed.level);
    const auto terms = static_cast<std::int64_t>(seed.coefficients.size());
    const int_series f = seed_series(seed, terms + 1);
    const auto bad = eigenform_violations(f, seed.level, std::min<std::int64_t>(terms, 200));
    for (const auto& b : bad)
        std::cout << "eigenform: " << b << "\n";
    if (!bad.empty())
        return exit_violations;

    const auto models = load_model_table(model_table_path(data_dir));
    if (auto it = models.find(seed.level); it != models.end()) {
        const std::int64_t p = std::min<std::int64_t>(terms - 4, 200);
        try {
            solve_xy(f, it->second, p);
        } catch (const inconsistent_at_exponent& e) {
            std::cout << "model " << it->second.to_string() << ": " << e.what() << "\n";
            return exit_violations;
        } catch (const non_integral& e) {
            std::cout << "model " << it->second.to_string() << ": " << e.what() << "\n";
            return exit_violations;
        }
        std::cout << "level " << seed.level << ": eigenform checks and model " << it->second.to_string()
                  << " consistent through q^" << p - 1 << "\n";
    } else {
        std::cout << "level " << seed.level << ": eigenform checks pass (no bundled model)\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// find-model

int cmd_find_model(std::vector<std::int64_t> levels, bool write, const fs::path& data_dir)
{
    if (levels.empty())
        levels.assign(genus_one_levels.begin(), genus_one_levels.end());
    auto table = load_model_table(model_table_path(data_dir));
    for (std::int64_t n : levels) {
        const int_series f = newform_series(n, 64, data_dir);
        const weierstrass_model m = find_model(f, n);
        std::cout << n << " " << m.to_string() << "\n";
        table[n] = m;
    }
    if (write)
        write_output(model_table_path(data_dir).string(), format_model_table(table));
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact q-series, modular function bases and congruence checks"};
    app.require_subcommand(1);
    std::string data_dir = default_data_dir().string();
    app.add_option("--data-dir", data_dir, "Directory with seeds/ and models.json");

    series_options so;
    auto* series = app.add_subcommand("series", "Print coefficients of a named series");
    series->add_option("spec", so.spec, "j, delta, partition, eta:<d:r,...>, jm:<m>, f:<level>:<m>, newform:<N>")
        ->required();
    series->add_option("--prec", so.precision, "Precision (exclusive); default covers the range");
    series->add_option("--range", so.range_text, "Exponent range a..b");
    series->add_option("--format", so.format, "text, csv or json");
    series->add_option("--out", so.out, "Output file");

    export_options eo;
    auto* exp = app.add_subcommand("export-basis", "Export a basis table as CSV or JSON");
    exp->add_option("--kind", eo.kind, "level1, genus0 or genus1");
    exp->add_option("--level", eo.level, "Level");
    exp->add_option("--max-index", eo.max_index, "Largest index m");
    exp->add_option("--prec", eo.precision, "Precision (exclusive)");
    exp->add_option("--format", eo.format, "csv or json");
    exp->add_option("--out", eo.out, "Output file");

    verify_options vo;
    auto* verify = app.add_subcommand("verify", "Run a verification suite (or all); suite parameters as --key value");
    verify->add_option("suite", vo.suite, "Suite name or 'all'")->required();
    verify->add_option("--prec", vo.precision, "Precision floor (P for pplication)");
    verify->add_option("--out", vo.out, "Report file, or directory for 'all'");
    verify->add_option("--format", vo.format, "json, csv or text (default: json with --out, else text)");
    verify->add_option("--jobs", vo.jobs, "Suites run in parallel")->check(CLI::PositiveNumber);
    verify->add_flag("--no-timing", vo.no_timing, "Write millis as 0 for byte-identical reports");
    verify->allow_extras();

    std::string seed_file;
    auto* seed = app.add_subcommand("seed-validate", "Check a newform seed file");
    seed->add_option("path", seed_file, "Seed JSON file")->required();

    std::vector<std::int64_t> model_levels;
    bool write_models = false;
    auto* model = app.add_subcommand("find-model", "Search Weierstrass models for genus-one levels");
    model->add_option("--level", model_levels, "Levels (default: all twelve)");
    model->add_flag("--write", write_models, "Update models.json in the data directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_error;
    }

    try {
        if (*series)
            return cmd_series(so, data_dir);
        if (*exp)
            return cmd_export_basis(eo, data_dir);
        if (*verify) {
            vo.extras = verify->remaining();
            return cmd_verify(vo, data_dir);
        }
        if (*seed)
            return cmd_seed_validate(seed_file, data_dir);
        if (*model)
            return cmd_find_model(model_levels, write_models, data_dir);
    } catch (const std::exception& e) {
        std::cerr << "qmod: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
