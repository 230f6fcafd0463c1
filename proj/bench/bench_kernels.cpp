// Serial reference kernels against the OpenMP ones.
//
//   bench_kernels [depth=12] [reps=5]
//
// Threads follow VLAB_THREADS / OMP_NUM_THREADS.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>

#include "vlab/commands.hpp"
#include "vlab/operators.hpp"
#include "vlab/parallel.hpp"
#include "vlab/reference.hpp"
#include "vlab/transform.hpp"

using clk = std::chrono::steady_clock;

static double time_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = clk::now();
    fn();
    const auto t1 = clk::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

int main(int argc, char** argv) {
  vlab::apply_thread_limit_from_env();
  const int depth = argc > 1 ? std::atoi(argv[1]) : 12;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  std::printf("threads: %d\n", vlab::max_threads());

  const int dyadic[] = {2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2};
  const int mixed[] = {2, 3, 4, 5, 2, 3, 4, 5, 2, 3, 4, 5};
  for (auto pattern : {std::span<const int>(dyadic), std::span<const int>(mixed)}) {
    // Mixed grids stop at the dyadic size so both runs do comparable work.
    int d = 0;
    std::uint64_t size = 1;
    while (d < static_cast<int>(pattern.size()) && size * static_cast<std::uint64_t>(pattern[static_cast<std::size_t>(d)]) <=
                                                       (std::uint64_t{1} << depth)) {
      size *= static_cast<std::uint64_t>(pattern[static_cast<std::size_t>(d)]);
      ++d;
    }
    const auto rs = vlab::build_radix(pattern, d);
    std::mt19937_64 rng(7);
    const auto f = vlab::random_function(rng, rs);
    std::printf("\nradices [%s]  M_N = %llu\n", rs.to_csv().c_str(), static_cast<unsigned long long>(rs.size()));

    const double t_ref = time_ms([&] { (void)vlab::reference::forward(f); }, reps);
    const double t_omp = time_ms([&] { (void)vlab::forward_fast(f); }, reps);
    std::printf("  forward   serial %9.3f ms   omp %9.3f ms   speedup %5.2f\n", t_ref, t_omp, t_ref / t_omp);

    const auto c = vlab::forward_fast(f);
    const double i_ref = time_ms([&] { (void)vlab::reference::inverse(c); }, reps);
    const double i_omp = time_ms([&] { (void)vlab::inverse(c); }, reps);
    std::printf("  inverse   serial %9.3f ms   omp %9.3f ms   speedup %5.2f\n", i_ref, i_omp, i_ref / i_omp);

    // The literal O(n^2) reference is only affordable on a short index range.
    const std::uint64_t nmax = std::min<std::uint64_t>(rs.size(), 48);
    const auto w = vlab::WeightFunction::power(1.0);
    const double m_ref = time_ms([&] { (void)vlab::reference::weighted_maximal(f, vlab::MeansKind::log_mean, w, nmax); }, 1);
    const double m_omp = time_ms([&] { (void)vlab::weighted_maximal(f, vlab::MeansKind::log_mean, w, nmax); }, 1);
    std::printf("  log-mean maximal (nmax=%llu)  serial %9.3f ms   omp %9.3f ms   speedup %5.2f\n",
                static_cast<unsigned long long>(nmax), m_ref, m_omp, m_ref / m_omp);
  }
  return 0;
}
