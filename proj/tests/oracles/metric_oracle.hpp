#pragma once

// Definitional metric formulas, written independently of src/eval.cpp.

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline std::vector<std::string> prefix(const std::vector<std::string> &r,
                                       std::size_t k) {
  return {r.begin(), r.begin() + static_cast<long>(std::min(k, r.size()))};
}

inline double count_rel(const std::vector<std::string> &r,
                        const std::set<std::string> &rel) {
  return static_cast<double>(std::count_if(
      r.begin(), r.end(), [&](const std::string &p) { return rel.count(p); }));
}

inline double precision(const std::vector<std::string> &r,
                        const std::set<std::string> &rel, std::size_t k) {
  return count_rel(prefix(r, k), rel) / static_cast<double>(k);
}

inline double recall(const std::vector<std::string> &r,
                     const std::set<std::string> &rel, std::size_t k) {
  return count_rel(prefix(r, k), rel) / static_cast<double>(rel.size());
}

// Sum over each relevant passage found at rank i <= k of P@i.
inline double ap(const std::vector<std::string> &r,
                 const std::set<std::string> &rel, std::size_t k) {
  double sum = 0;
  for (const auto &p : rel) {
    auto it = std::find(r.begin(), r.end(), p);
    if (it == r.end())
      continue;
    const std::size_t i = static_cast<std::size_t>(it - r.begin()) + 1;
    if (i <= k)
      sum += precision(r, rel, i);
  }
  return sum / static_cast<double>(rel.size());
}

inline double rr(const std::vector<std::string> &r,
                 const std::set<std::string> &rel, std::size_t k) {
  std::size_t best = 0;
  for (const auto &p : rel) {
    auto it = std::find(r.begin(), r.end(), p);
    if (it == r.end())
      continue;
    const std::size_t i = static_cast<std::size_t>(it - r.begin()) + 1;
    if (i <= k && (best == 0 || i < best))
      best = i;
  }
  return best == 0 ? 0.0 : 1.0 / static_cast<double>(best);
}

// Every ordered selection without repetition of up to `max_len` items.
inline std::vector<std::vector<std::string>>
rankings(const std::vector<std::string> &universe, std::size_t max_len) {
  std::vector<std::vector<std::string>> out{{}};
  std::vector<std::vector<std::string>> frontier{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    for (const auto &r : frontier)
      for (const auto &p : universe)
        if (std::find(r.begin(), r.end(), p) == r.end()) {
          auto x = r;
          x.push_back(p);
          next.push_back(x);
        }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline std::vector<std::set<std::string>>
subsets(const std::vector<std::string> &universe, std::size_t lo,
        std::size_t hi) {
  std::vector<std::set<std::string>> out;
  for (unsigned mask = 1; mask < (1u << universe.size()); ++mask) {
    std::set<std::string> s;
    for (std::size_t i = 0; i < universe.size(); ++i)
      if (mask & (1u << i))
        s.insert(universe[i]);
    if (s.size() >= lo && s.size() <= hi)
      out.push_back(s);
  }
  return out;
}

} // namespace oracle
