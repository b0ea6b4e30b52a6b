#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "q8curves/cartier.hpp"
#include "q8curves/isomorphism.hpp"
#include "q8curves/polynomial.hpp"

namespace q8curves {

/// Closed-form predictions for prime p:
///   q8  = floor(p/48) if p = 1, 7 mod 8, else 0
///   g24 = p = 17, 23 mod 24      (SL2(F3) curve superspecial)
///   g32 = p = 9, 15 mod 16       (C16 x| C2 curve superspecial)
struct ExpectedCounts {
  u64 q8 = 0;
  bool g24 = false;
  bool g32 = false;
};

ExpectedCounts expected_counts(u64 p);

/// One prime's result row.
struct EnumerationRecord {
  u64 p = 0;
  unsigned p_mod8 = 0, p_mod16 = 0, p_mod24 = 0;
  u64 e = 0;
  u64 deg_gcdall = 0;
  bool star_ok = false;
  StarDiagnostics star;
  /// Absent when the star condition fails.
  std::optional<u64> q8_count;
  bool g24_superspecial = false;
  bool g32_superspecial = false;
  bool matches_q8_formula = false;
  bool matches_g24_rule = false;
  bool matches_g32_rule = false;
  double elapsed_ms = 0;
  u64 seed = kDefaultSeed;

  bool all_match() const {
    return star_ok && matches_q8_formula && matches_g24_rule && matches_g32_rule;
  }
};

/// Counts isomorphism classes of superspecial H_a for one prime from the
/// degree of gcdall. Never throws for valid primes except InternalError when
/// an invariant (6 | adjusted degree, divisibility/evaluation agreement)
/// breaks. Throws InvalidPrime.
EnumerationRecord enumerate_prime(u64 p, u64 seed = kDefaultSeed);

/// Same, reusing an already computed gcdall.
EnumerationRecord classify(const CartierContext& cctx, const GcdAllResult& g, u64 seed = kDefaultSeed);

struct ClassRepresentative {
  Orbit orbit;
  AutClass aut;
};

struct RepresentativeSet {
  /// Sorted by canonical member.
  std::vector<ClassRepresentative> classes;
  /// Degrees of irreducible gcdall factors of degree >= 3.
  std::vector<std::size_t> residual_degrees;

  std::size_t count(AutClass c) const {
    return static_cast<std::size_t>(std::count_if(
        classes.begin(), classes.end(), [c](const ClassRepresentative& r) { return r.aut == c; }));
  }
};

/// Groups parameter values into isomorphism orbits; every orbit must lie
/// inside `values` or InternalError is thrown.
std::vector<ClassRepresentative> group_into_orbits(const PrimeContext& ctx, std::vector<Fp2> values);

/// Factors gcdall and groups its F_{p^2} roots into orbits.
/// Throws StarViolated when the star condition fails.
RepresentativeSet representatives(u64 p, u64 seed = kDefaultSeed);
RepresentativeSet representatives(const CartierContext& cctx, const GcdAllResult& g,
                                  u64 seed = kDefaultSeed);

/// Brute force over every a in F_{p^2} \ {+-2} with the Cartier-Manin
/// matrix; does not touch gcdall.
struct OracleCensus {
  std::vector<Fp2> superspecial;  // sorted
  std::vector<ClassRepresentative> classes;
  u64 q8_classes = 0;
  bool g24 = false;
  bool g32 = false;
};

OracleCensus exhaustive_census(const CartierContext& cctx);

/// Empty means the check passed; otherwise one message per failure.
std::vector<std::string> verify_spot(const CartierContext& cctx, const GcdAllResult& g, u64 seed);
std::vector<std::string> verify_full(const CartierContext& cctx, const GcdAllResult& g,
                                     const EnumerationRecord& rec);

/// Primes q with from <= q < to and q >= 7.
std::vector<u64> primes_in_range(u64 from, u64 to);

/// Runs work(inputs[i]) on a pool of `threads` workers (0 = hardware
/// concurrency) and hands results to sink(i, result) strictly in input
/// order on the calling thread. A false return from sink stops scheduling
/// new work. The first exception thrown by work is rethrown after the
/// workers have stopped.
template <class R>
void ordered_parallel_map(std::span<const u64> inputs, unsigned threads,
                          const std::function<R(u64)>& work,
                          const std::function<bool(std::size_t, R&)>& sink) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, inputs.size())));

  std::vector<std::optional<R>> slots(inputs.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      if (stop.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= inputs.size()) return;
      try {
        R r = work(inputs[i]);
        std::lock_guard lk(mu);
        slots[i] = std::move(r);
      } catch (...) {
        std::lock_guard lk(mu);
        if (!failure) failure = std::current_exception();
        stop.store(true);
      }
      ready.notify_all();
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

    for (std::size_t i = 0; i < inputs.size(); ++i) {
      std::optional<R> item;
      {
        std::unique_lock lk(mu);
        ready.wait(lk, [&] { return slots[i].has_value() || failure != nullptr; });
        if (!slots[i]) break;
        item = std::move(slots[i]);
        slots[i].reset();
      }
      if (!sink(i, *item)) {
        stop.store(true);
        break;
      }
    }
    stop.store(true);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace q8curves
