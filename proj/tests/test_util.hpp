#pragma once

// Shared helpers for the test binaries: terse instance builders, seeded
// random data, and an independent rational-arithmetic fairness oracle that
// never touches the library's scaled-integer comparisons.

#include <boost/rational.hpp>
#include <cstdint>
#include <random>
#include <vector>

#include "core/instance.hpp"
#include "core/verifier.hpp"

namespace testutil {

using propavg::Allocation;
using propavg::Bundle;
using propavg::Instance;
using propavg::Notion;
using propavg::Value;
using Rat = boost::rational<long long>;

inline Instance inst(std::vector<std::vector<Value>> rows) {
  const int n = static_cast<int>(rows.size());
  const int m = n ? static_cast<int>(rows[0].size()) : 0;
  std::vector<Value> flat;
  for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return Instance::create(n, m, std::move(flat));
}

inline Allocation alloc(std::vector<Bundle> bundles) { return Allocation{std::move(bundles)}; }

// The workhorse example used across suites: three agents with identical
// valuations (10, 7, 7, 6).
inline Instance identical3x4() { return inst({{10, 7, 7, 6}, {10, 7, 7, 6}, {10, 7, 7, 6}}); }

inline Value rat_bundle_value(const Instance& in, int agent, const Bundle& b) {
  Value s = 0;
  for (int g : b) s += in.value(agent, g);
  return s;
}

inline Value rat_min_good(const Instance& in, int agent, const Bundle& b) {
  if (b.empty()) return 0;
  Value m = in.value(agent, b[0]);
  for (int g : b) m = std::min(m, in.value(agent, g));
  return m;
}

// Direct transcription of each notion's definition over exact rationals.
inline bool rational_satisfied(const Instance& in, const Allocation& a, int i, Notion n) {
  const int na = in.agents();
  const Value own = rat_bundle_value(in, i, a.bundles[i]);
  if (n == Notion::EF || n == Notion::EF1 || n == Notion::EFX) {
    for (int j = 0; j < na; ++j) {
      if (j == i) continue;
      const Value vj = rat_bundle_value(in, i, a.bundles[j]);
      if (n == Notion::EF && own < vj) return false;
      if (n == Notion::EF1) {
        if (a.bundles[j].empty()) continue;
        Value best = 0;
        for (int g : a.bundles[j]) best = std::max(best, in.value(i, g));
        if (own < vj - best) return false;
      }
      if (n == Notion::EFX && own + rat_min_good(in, i, a.bundles[j]) < vj) return false;
    }
    return true;
  }

  Rat d(0);
  if (na > 1) {
    std::vector<Value> mins;
    for (int j = 0; j < na; ++j)
      if (j != i) mins.push_back(rat_min_good(in, i, a.bundles[j]));
    switch (n) {
      case Notion::PROP: break;
      case Notion::PROP1: {
        Value best = 0;
        for (int j = 0; j < na; ++j) {
          if (j == i) continue;
          for (int g : a.bundles[j]) best = std::max(best, in.value(i, g));
        }
        d = Rat(best);
        break;
      }
      case Notion::PROPM: {
        Value best = 0;
        for (Value m : mins) best = std::max(best, m);
        d = Rat(best);
        break;
      }
      case Notion::PROPAVG: {
        Value sum = 0;
        for (Value m : mins) sum += m;
        d = Rat(sum, na - 1);
        break;
      }
      case Notion::AVG_EFX: {
        Value sum = 0;
        for (Value m : mins) sum += m;
        d = Rat(sum, na);
        break;
      }
      case Notion::PROPX: {
        Value best = mins[0];
        for (Value m : mins) best = std::min(best, m);
        d = Rat(best);
        break;
      }
      default: break;
    }
  }
  return Rat(own) + d >= Rat(in.total(i), na);
}

inline bool rational_all(const Instance& in, const Allocation& a, Notion n) {
  for (int i = 0; i < in.agents(); ++i)
    if (!rational_satisfied(in, a, i, n)) return false;
  return true;
}

// Seeded random instance: dims fixed by the caller, uniform values.
inline Instance random_instance(std::mt19937_64& rng, int agents, int goods, Value max_value) {
  std::uniform_int_distribution<Value> dist(0, max_value);
  std::vector<Value> flat(static_cast<std::size_t>(agents) * goods);
  for (auto& v : flat) v = dist(rng);
  return Instance::create(agents, goods, std::move(flat));
}

// Uniform random ownership; always a valid partition.
inline Allocation random_allocation(std::mt19937_64& rng, int agents, int goods) {
  std::uniform_int_distribution<int> owner(0, agents - 1);
  Allocation a;
  a.bundles.resize(agents);
  for (int g = 0; g < goods; ++g) a.bundles[owner(rng)].push_back(g);
  return a;
}

}  // namespace testutil
