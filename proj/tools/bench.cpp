// Benchmark of the OpenMP kernels against their serial references:
//   - representation counting over X_{h,n}
//   - the epsilon candidate scan
// Each kernel is checked for exact agreement with the serial path before
// timings are reported.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bhset/epsilon.hpp"
#include "bhset/realexpr.hpp"
#include "bhset/verify.hpp"

using namespace bhset;

namespace {

double run_ms(const std::function<void()>& fn) {
    // Cooldown so a preceding burst (and any CPU-quota throttling it caused)
    // does not bleed into the next measurement.
    std::this_thread::sleep_for(std::chrono::milliseconds(300));
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Point> random_points(int n, std::mt19937_64& rng) {
    std::vector<Point> points;
    points.reserve(n);
    std::set<long> used;
    while (static_cast<int>(points.size()) < n) {
        long v = static_cast<long>(rng() % 4'000'000'000ULL) - 2'000'000'000L;
        if (used.insert(v).second) points.push_back({mpz_class(v)});
    }
    return points;
}

bool same_counts(const RepCounts& a, const RepCounts& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [sum, entry] : a) {
        auto it = b.find(sum);
        if (it == b.end() || it->second.count != entry.count ||
            it->second.first_rank != entry.first_rank) {
            return false;
        }
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int rep_n = 160;
    int rep_h = 3;
    int eps_n = 7;
    int eps_h = 3;
    for (int i = 1; i + 1 < argc; i += 2) {
        std::string flag = argv[i];
        int value = std::atoi(argv[i + 1]);
        if (flag == "--rep-n") rep_n = value;
        else if (flag == "--rep-h") rep_h = value;
        else if (flag == "--eps-n") eps_n = value;
        else if (flag == "--eps-h") eps_h = value;
    }

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    // --- representation counting ------------------------------------------
    {
        std::mt19937_64 rng(20240901);
        auto points = random_points(rep_n, rng);
        mpz_class total = count_multiindices(rep_h, rep_n);
        std::printf("\nrepresentation counts: n=%d h=%d  |X|=%s\n", rep_n, rep_h,
                    total.get_str().c_str());

        VerifyOptions serial_opts;
        serial_opts.parallel = false;
        VerifyOptions par_opts;
        par_opts.parallel = true;

        RepCounts serial_map, par_map;
        double t_serial = run_ms([&] { serial_map = representation_counts_serial(points, rep_h, serial_opts); });
        double t_par = run_ms([&] { par_map = representation_counts(points, rep_h, par_opts); });
        std::printf("  serial   %10.1f ms\n", t_serial);
        std::printf("  openmp   %10.1f ms   speedup %.2fx   %s\n", t_par, t_serial / t_par,
                    same_counts(serial_map, par_map) ? "agree" : "MISMATCH");
    }

    // --- epsilon candidate scan ---------------------------------------------
    {
        static const unsigned long squarefree[] = {2, 3, 5, 7, 11, 13, 15, 17, 19, 21, 23, 26};
        std::vector<std::string> specs;
        for (int i = 0; i < eps_n; ++i) specs.push_back("sqrt:" + std::to_string(squarefree[i]));
        auto sys = parse_theta_system(specs);
        mpz_class cand = count_difference_vectors(eps_h, eps_n);
        std::printf("\nepsilon scan: n=%d h=%d  candidates=%s\n", eps_n, eps_h,
                    cand.get_str().c_str());

        EpsilonOptions serial_opts;
        serial_opts.parallel = false;
        EpsilonOptions par_opts;
        par_opts.parallel = true;

        EpsilonBound serial_eps, par_eps;
        double t_serial = run_ms([&] { serial_eps = compute_epsilon(sys, eps_h, serial_opts); });
        double t_par = run_ms([&] { par_eps = compute_epsilon(sys, eps_h, par_opts); });
        const bool agree = serial_eps.lo.cmp(par_eps.lo) == 0 && serial_eps.hi.cmp(par_eps.hi) == 0 &&
                           serial_eps.argmin == par_eps.argmin;
        std::printf("  serial   %10.1f ms\n", t_serial);
        std::printf("  openmp   %10.1f ms   speedup %.2fx   %s\n", t_par, t_serial / t_par,
                    agree ? "agree" : "MISMATCH");
        std::printf("  eps = %s  argmin (", serial_eps.lo.to_decimal(12).c_str());
        for (size_t i = 0; i < serial_eps.argmin.coords.size(); ++i) {
            std::printf("%s%d", i ? "," : "", serial_eps.argmin.coords[i]);
        }
        std::printf(")\n");
    }
    return 0;
}
