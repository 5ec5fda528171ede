// Timing comparison of the serial reference kernels against the
// OpenMP-parallel ones: up-set enumeration on a wide poset and the
// element-level section kernel on a large finite group.

#include <cstdio>
#include <memory>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
#endif

#include "alc/oracles.hpp"
#include "alc/spec_model.hpp"
#include "alc/verify.hpp"

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
#endif
}

template <typename Fn>
double time_best_of(unsigned reps, Fn&& fn) {
    double best = 1e300;
    for (unsigned i = 0; i < reps; ++i) {
        const double t0 = now();
        fn();
        const double t1 = now();
        if (t1 - t0 < best) best = t1 - t0;
    }
    return best;
}

std::shared_ptr<const alc::PosetSpec> wide_poset(std::size_t n) {
    std::vector<std::string> points;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < n; ++i) points.push_back("p" + std::to_string(i));
    // Two-layer fence: even indices below their odd neighbours.
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        pairs.emplace_back(points[i], points[i + 1]);
        if (i + 2 < n) pairs.emplace_back(points[i + 2], points[i + 1]);
    }
    return std::make_shared<const alc::PosetSpec>(std::move(points), pairs);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp unavailable, both columns run serially\n");
#endif
    std::printf("%-28s %12s %12s %8s\n", "kernel", "serial[s]", "parallel[s]", "speedup");

    {
        const auto poset = wide_poset(16);
        const double s = time_best_of(3, [&] { alc::oracle::enumerate_upsets_serial(poset); });
        const double p = time_best_of(3, [&] { alc::oracle::enumerate_upsets(poset); });
        std::printf("%-28s %12.4f %12.4f %8.2f\n", "enumerate_upsets n=16", s, p, s / p);
    }
    {
        // 2^6 * 3^4 * 5^2 * 7 = 907200 elements
        alc::oracle::FiniteTorsionGroup group({64, 81, 25, 7});
        const auto w = alc::SpecClosedSet::finite_max({alc::Int(2), alc::Int(5)});
        const double s =
            time_best_of(3, [&] { alc::oracle::gamma_by_elements_serial(w, group); });
        const double p = time_best_of(3, [&] { alc::oracle::gamma_by_elements(w, group); });
        std::printf("%-28s %12.4f %12.4f %8.2f\n", "gamma_by_elements |G|=9e5", s, p, s / p);
    }
    {
        alc::verify::Options opts;
        opts.cases = 64;
        opts.parallel = false;
        const double s = time_best_of(2, [&] { alc::verify::run_suite("sections", opts); });
        opts.parallel = true;
        const double p = time_best_of(2, [&] { alc::verify::run_suite("sections", opts); });
        std::printf("%-28s %12.4f %12.4f %8.2f\n", "verify sections x64", s, p, s / p);
    }
    return 0;
}
