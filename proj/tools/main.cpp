// bhset: construct and verify B_h sets of integers and lattice points.
//
// Subcommands: xhn, epsilon, generate, gadic, verify. Output is a JSON
// document on stdout (or --text for a human summary); identical inputs and
// seed produce byte-identical payloads apart from timing_ms.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "bhset/construct.hpp"
#include "bhset/epsilon.hpp"
#include "bhset/error.hpp"
#include "bhset/gadic.hpp"
#include "bhset/json_io.hpp"
#include "bhset/multiindex.hpp"
#include "bhset/verify.hpp"

namespace {

using bhset::json;

struct GlobalFlags {
    bool text = false;
    size_t digits = 15;
    long precision_max = 16384;
    std::uint64_t cap = 0;  // 0: per-command default
    std::optional<unsigned long> seed;
};

int exit_code_for(const bhset::Error& e) {
    switch (e.kind()) {
        case bhset::ErrorKind::validation: return 2;
        case bhset::ErrorKind::cap_exceeded: return 3;
        case bhset::ErrorKind::precision_exhausted: return 4;
        case bhset::ErrorKind::uncertified: return 5;
    }
    return 2;
}

void emit(const GlobalFlags& flags, const std::string& command, const json& inputs,
          const json& result, double ms, const std::string& text_summary) {
    if (flags.text) {
        std::cout << text_summary;
        return;
    }
    json doc{{"schema_version", "1"},
             {"command", command},
             {"inputs", inputs},
             {"result", result},
             {"timing_ms", ms}};
    std::cout << doc.dump(2) << "\n";
}

double ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

bhset::ThetaSystem system_from_args(const std::vector<std::string>& specs,
                                    std::vector<std::string>* warnings) {
    auto sys = bhset::parse_theta_system(specs, warnings);
    return sys;
}

json theta_inputs_json(const bhset::ThetaSystem& sys) {
    json arr = json::array();
    for (const auto& vec : sys.vectors) {
        std::string rendered;
        for (size_t j = 0; j < vec.size(); ++j) {
            if (j) rendered += ",";
            rendered += bhset::render(vec[j]);
        }
        arr.push_back(rendered);
    }
    return arr;
}

void print_warnings(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

bhset::EpsilonOptions epsilon_options(const GlobalFlags& flags) {
    bhset::EpsilonOptions opts;
    opts.max_bits = static_cast<mpfr_prec_t>(flags.precision_max);
    if (flags.cap) opts.cap = flags.cap;
    return opts;
}

// ---------------------------------------------------------------------------

int cmd_xhn(const GlobalFlags& flags, int h, int n, bool list, bool diffs) {
    auto t0 = std::chrono::steady_clock::now();
    bhset::EnumOptions opts;
    if (flags.cap) opts.cap = flags.cap;

    json result{{"h", h}, {"n", n}, {"count", bhset::mpz_to_json(bhset::count_multiindices(h, n))}};
    std::string text = "|X_{" + std::to_string(h) + "," + std::to_string(n) +
                       "}| = " + bhset::count_multiindices(h, n).get_str() + "\n";
    if (list) {
        auto xs = bhset::enumerate_multiindices(h, n, opts);
        json arr = json::array();
        for (const auto& x : xs) {
            arr.push_back(bhset::multiindex_to_json(x));
            text += "  (";
            for (int i = 0; i < x.n(); ++i) text += (i ? "," : "") + std::to_string(x.coords[i]);
            text += ")\n";
        }
        result["list"] = arr;
    }
    if (diffs) {
        auto zs = bhset::enumerate_difference_vectors(h, n, opts);
        json arr = json::array();
        for (const auto& z : zs) arr.push_back(json(z.coords));
        result["difference_vectors"] = arr;
        result["difference_count"] = bhset::mpz_to_json(bhset::count_difference_vectors(h, n));
        text += "difference vectors: " + std::to_string(zs.size()) + "\n";
    }
    emit(flags, "xhn", json{{"h", h}, {"n", n}, {"list", list}, {"diffs", diffs}}, result,
         ms_since(t0), text);
    return 0;
}

int cmd_epsilon(const GlobalFlags& flags, const std::vector<std::string>& thetas, int h, long m) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    auto sys = system_from_args(thetas, &warnings);
    print_warnings(warnings);

    auto eps = bhset::compute_epsilon(sys, h, epsilon_options(flags));
    mpz_class q_min = bhset::min_modulus(eps, h, m);

    json result{{"eps", bhset::epsilon_to_json(eps, flags.digits)},
                {"m", m},
                {"q_min", bhset::mpz_to_json(q_min)}};
    std::string text = "eps in [" + eps.lo.to_decimal(flags.digits) + ", " +
                       eps.hi.to_decimal(flags.digits) + "]\nargmin (";
    for (size_t i = 0; i < eps.argmin.coords.size(); ++i) {
        text += (i ? "," : "") + std::to_string(eps.argmin.coords[i]);
    }
    text += ")\nq_min (m=" + std::to_string(m) + ") = " + q_min.get_str() + "\n";
    emit(flags, "epsilon",
         json{{"thetas", theta_inputs_json(sys)}, {"h", h}, {"m", m},
              {"precision_max", flags.precision_max}},
         result, ms_since(t0), text);
    return 0;
}

int cmd_generate(const GlobalFlags& flags, const std::vector<std::string>& thetas, int h, long m,
                 std::optional<long> q_opt, bool all, std::uint64_t limit, bool force,
                 bool positive, const std::string& sets_out) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    auto sys = system_from_args(thetas, &warnings);
    print_warnings(warnings);

    bhset::ConstructOptions opts;
    opts.epsilon = epsilon_options(flags);
    opts.digit_max_bits = static_cast<mpfr_prec_t>(flags.precision_max);
    opts.force_uncertified = force;
    opts.positivity_mode = positive;

    std::optional<mpz_class> q;
    if (q_opt) q = mpz_class(*q_opt);
    auto [set, cert] = bhset::construct_certified(sys, h, mpz_class(m), q, opts);

    json certificate = bhset::certificate_to_json(cert, flags.digits);
    certificate["set"] = bhset::lattice_set_points_json(set);
    certificate["choice_code"] = set.choice_code;
    json result{{"certificate", certificate}};

    bhset::PointSetFile file;
    file.d = sys.d;
    file.sets.push_back(set.points);

    std::string text = "q = " + cert.params.q.get_str() + (cert.certified ? " (certified)\n" : " (NOT certified)\n");
    if (all) {
        auto sets = bhset::enumerate_certified_sets(sys, h, mpz_class(m), cert.params.q, limit,
                                                    flags.seed, opts);
        json arr = json::array();
        file.sets.clear();
        for (const auto& s : sets) {
            arr.push_back(json{{"choice_code", s.choice_code},
                               {"set", bhset::lattice_set_points_json(s)}});
            file.sets.push_back(s.points);
        }
        result["sets"] = arr;
        result["set_count"] = sets.size();
        if (flags.seed) result["seed"] = *flags.seed;
        text += std::to_string(sets.size()) + " sets\n";
    } else {
        std::string coords;
        for (size_t i = 0; i < set.points.size(); ++i) {
            coords += (i ? ", " : "");
            for (size_t j = 0; j < set.points[i].size(); ++j) {
                coords += (j ? "," : "") + set.points[i][j].get_str();
            }
        }
        text += "A = {" + coords + "}\n";
    }
    if (!sets_out.empty()) {
        std::ofstream out(sets_out);
        if (!out) throw bhset::Error::validation("cannot write '" + sets_out + "'");
        out << bhset::point_set_file_to_json(file).dump(2) << "\n";
    }

    json inputs{{"thetas", theta_inputs_json(sys)}, {"h", h}, {"m", m}, {"all", all},
                {"limit", limit}, {"force", force}, {"positive", positive}};
    if (q_opt) inputs["q"] = *q_opt;
    if (flags.seed) inputs["seed"] = *flags.seed;
    emit(flags, "generate", inputs, result, ms_since(t0), text);
    return 0;
}

int cmd_gadic(const GlobalFlags& flags, const std::vector<std::string>& thetas, long g, long level,
              bool auto_level) {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> warnings;
    auto sys = system_from_args(thetas, &warnings);
    print_warnings(warnings);

    bhset::GadicOptions opts;
    opts.epsilon = epsilon_options(flags);
    opts.floor_max_bits = static_cast<mpfr_prec_t>(flags.precision_max);
    mpz_class base(g);

    int l0 = bhset::min_level(sys, base, opts);
    int use_level = auto_level ? l0 : static_cast<int>(level);
    auto [set, cert] = bhset::gadic_sidon_set(sys, base, use_level, opts);

    json certificate = bhset::certificate_to_json(cert, flags.digits);
    certificate["set"] = bhset::lattice_set_points_json(set);
    certificate["choice_code"] = set.choice_code;
    json result{{"g", g}, {"level", use_level}, {"min_level", l0}, {"certificate", certificate}};
    std::string coords;
    for (size_t i = 0; i < set.points.size(); ++i) {
        coords += (i ? ", " : "") + set.points[i][0].get_str();
    }
    std::string text = "B = {" + coords + "}  level " + std::to_string(use_level) +
                       (cert.certified ? " (certified, " : " (NOT certified, ") +
                       "min level " + std::to_string(l0) + ")\n";
    json inputs{{"thetas", theta_inputs_json(sys)}, {"g", g}, {"auto_level", auto_level}};
    if (!auto_level) inputs["level"] = level;
    emit(flags, "gadic", inputs, result, ms_since(t0), text);
    return 0;
}

int cmd_verify(const GlobalFlags& flags, const std::string& points_inline, const std::string& file,
               int h) {
    auto t0 = std::chrono::steady_clock::now();
    if (points_inline.empty() == file.empty()) {
        throw bhset::Error::validation("give exactly one of --points or --file");
    }
    bhset::PointSetFile input = file.empty() ? bhset::parse_inline_points(points_inline)
                                             : bhset::read_point_sets(file);

    bhset::VerifyOptions opts;
    if (flags.cap) opts.cap = flags.cap;

    json reports = json::array();
    std::string text;
    bool all_bh = true;
    for (const auto& set : input.sets) {
        auto rep = bhset::verify_report(set, h, opts);
        reports.push_back(bhset::report_to_json(rep, set));
        all_bh = all_bh && rep.is_bh;
        text += std::string(rep.is_bh ? "B_h: yes" : "B_h: NO") +
                "  |hA| = " + std::to_string(rep.sumset_size) +
                " / " + rep.expected_max.get_str() + "\n";
    }
    json result{{"d", input.d}, {"reports", reports}, {"all_bh", all_bh}};
    json inputs{{"h", h}};
    if (!file.empty()) inputs["file"] = file;
    if (!points_inline.empty()) inputs["points"] = points_inline;
    emit(flags, "verify", inputs, result, ms_since(t0), text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construction and brute-force verification of B_h sets of integers and lattice points"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_flag("--text", flags.text, "human-readable output instead of JSON");
    app.add_option("--digits", flags.digits, "significant digits for decimal renderings")
        ->default_val(15);
    app.add_option("--precision-max", flags.precision_max, "precision ladder cap in bits")
        ->default_val(16384);
    app.add_option("--cap", flags.cap, "enumeration cap override");
    unsigned long seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "seed for sampled enumeration");

    // xhn
    int h = 2, n = 2;
    bool list = false, diffs = false;
    auto* xhn = app.add_subcommand("xhn", "enumerate X_{h,n} and its difference vectors");
    xhn->set_help_flag("--help", "print help");
    xhn->fallthrough();
    xhn->add_option("-h,--sum", h, "h (coordinate sum)")->required();
    xhn->add_option("-n,--len", n, "n (tuple length)")->required();
    xhn->add_flag("--list", list, "print the full listing");
    xhn->add_flag("--diffs", diffs, "print the canonical difference vectors");

    // epsilon
    std::vector<std::string> eps_thetas;
    int eps_h = 2;
    long eps_m = 1;
    auto* epsilon = app.add_subcommand("epsilon", "rigorous enclosure of the separation constant");
    epsilon->set_help_flag("--help", "print help");
    epsilon->fallthrough();
    epsilon->add_option("-h,--sum", eps_h, "h")->required();
    epsilon->add_option("-m,--margin", eps_m, "m used for the q_min report")->default_val(1);
    epsilon->add_option("thetas", eps_thetas, "theta expressions (coordinates comma-separated)")
        ->required();

    // generate
    std::vector<std::string> gen_thetas;
    int gen_h = 2;
    long gen_m = 1;
    long gen_q = 0;
    bool gen_all = false, gen_force = false, gen_positive = false;
    std::uint64_t gen_limit = 4096;
    std::string gen_sets_out;
    auto* generate = app.add_subcommand("generate", "construct certified B_h sets");
    generate->set_help_flag("--help", "print help");
    generate->fallthrough();
    generate->add_option("-h,--sum", gen_h, "h")->required();
    generate->add_option("-m,--margin", gen_m, "m (digit margin)")->default_val(1);
    auto* gen_q_opt = generate->add_option("-q,--modulus", gen_q, "q (omit to auto-select)");
    generate->add_flag("--all", gen_all, "enumerate the whole (2m)^(dn) family");
    generate->add_option("--limit", gen_limit, "family size limit for --all")->default_val(4096);
    generate->add_flag("--force", gen_force, "build even if q is below the certified threshold");
    generate->add_flag("--positive", gen_positive, "positivity mode for nonnegative thetas");
    generate->add_option("--sets-out", gen_sets_out, "write the sets as a verify-compatible JSON file");
    generate->add_option("thetas", gen_thetas, "theta expressions")->required();

    // gadic
    std::vector<std::string> gad_thetas;
    long gad_g = 10, gad_level = 1;
    bool gad_auto = false;
    auto* gadic = app.add_subcommand("gadic", "Sidon sets from base-g truncations");
    gadic->set_help_flag("--help", "print help");
    gadic->fallthrough();
    gadic->add_option("-g,--base", gad_g, "base g >= 2")->required();
    auto* gad_level_opt = gadic->add_option("-l,--level", gad_level, "truncation level");
    gadic->add_flag("--auto-level", gad_auto, "use the smallest certified level");
    gadic->add_option("thetas", gad_thetas, "theta expressions (d = 1)")->required();

    // verify
    std::string ver_points, ver_file;
    int ver_h = 2;
    auto* verify = app.add_subcommand("verify", "brute-force B_h check of explicit point sets");
    verify->set_help_flag("--help", "print help");
    verify->fallthrough();
    verify->add_option("-h,--sum", ver_h, "h")->required();
    verify->add_option("--points", ver_points, "inline points, whitespace-separated (coords by commas)");
    verify->add_option("--file", ver_file, "point-set file (JSON or one point per line)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (*seed_opt) flags.seed = seed_value;

    try {
        if (*xhn) return cmd_xhn(flags, h, n, list, diffs);
        if (*epsilon) return cmd_epsilon(flags, eps_thetas, eps_h, eps_m);
        if (*generate) {
            std::optional<long> q;
            if (*gen_q_opt) q = gen_q;
            return cmd_generate(flags, gen_thetas, gen_h, gen_m, q, gen_all, gen_limit, gen_force,
                                gen_positive, gen_sets_out);
        }
        if (*gadic) {
            if (!gad_auto && !*gad_level_opt) {
                throw bhset::Error::validation("gadic needs --level or --auto-level");
            }
            return cmd_gadic(flags, gad_thetas, gad_g, gad_level, gad_auto);
        }
        if (*verify) return cmd_verify(flags, ver_points, ver_file, ver_h);
    } catch (const bhset::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
