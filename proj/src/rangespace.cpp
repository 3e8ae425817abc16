#include "epsnet/rangespace.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace epsnet {

RangeSpace RangeSpace::from_incidences(std::size_t n, std::vector<IndexSet> ranges,
                                       std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n) {
    throw std::invalid_argument("label count " + std::to_string(labels.size()) +
                                " does not match ground size " + std::to_string(n));
  }
  for (auto& r : ranges) {
    for (Index i : r) {
      if (i >= n) {
        throw std::out_of_range("range index " + std::to_string(i) +
                                " outside ground set of size " + std::to_string(n));
      }
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  std::sort(ranges.begin(), ranges.end());
  ranges.erase(std::unique(ranges.begin(), ranges.end()), ranges.end());

  RangeSpace rs;
  rs.n_ = n;
  rs.ranges_ = std::move(ranges);
  rs.labels_ = std::move(labels);
  rs.masks_.reserve(rs.ranges_.size());
  for (const auto& r : rs.ranges_) rs.masks_.push_back(to_bitset(n, r));
  return rs;
}

std::size_t RangeSpace::max_range_size() const {
  std::size_t best = 0;
  for (const auto& r : ranges_) best = std::max(best, r.size());
  return best;
}

Bitset to_bitset(std::size_t n, std::span<const Index> set) {
  Bitset b(n);
  for (Index i : set) b.set(i);
  return b;
}

IndexSet to_index_set(const Bitset& bits) {
  IndexSet out;
  for (auto i = bits.find_first(); i != Bitset::npos; i = bits.find_next(i)) {
    out.push_back(static_cast<Index>(i));
  }
  return out;
}

bool is_heavy(std::size_t range_size, std::size_t n, const Rational& eps) {
  return Rational(static_cast<unsigned long>(range_size)) >=
         eps * Rational(static_cast<unsigned long>(n));
}

namespace {

// Drops every range that strictly contains another. A kept range K can only
// be a subset of candidate R if min(K) is in R, so kept ranges are bucketed
// by their smallest element.
std::vector<IndexSet> minimal_sets(std::vector<IndexSet> sets, std::size_t n) {
  std::stable_sort(sets.begin(), sets.end(),
                   [](const IndexSet& a, const IndexSet& b) { return a.size() < b.size(); });
  std::vector<std::vector<std::size_t>> by_min(n);
  std::vector<IndexSet> kept;
  for (auto& s : sets) {
    bool dominated = false;
    if (s.empty()) {
      dominated = !kept.empty();
    } else if (!kept.empty() && kept.front().empty()) {
      dominated = true;
    } else {
      for (Index e : s) {
        for (std::size_t k : by_min[e]) {
          if (std::includes(s.begin(), s.end(), kept[k].begin(), kept[k].end())) {
            dominated = true;
            break;
          }
        }
        if (dominated) break;
      }
    }
    if (dominated) continue;
    if (!s.empty()) by_min[s.front()].push_back(kept.size());
    kept.push_back(std::move(s));
  }
  return kept;
}

}  // namespace

RangeSpace minimalize(const RangeSpace& rs) {
  return RangeSpace::from_incidences(rs.ground_size(), minimal_sets(rs.ranges(), rs.ground_size()),
                                     rs.labels());
}

RangeSpace heavy_ranges(const RangeSpace& rs, const Rational& eps) {
  std::vector<IndexSet> heavy;
  for (const auto& r : rs.ranges()) {
    if (!r.empty() && is_heavy(r.size(), rs.ground_size(), eps)) heavy.push_back(r);
  }
  return RangeSpace::from_incidences(rs.ground_size(),
                                     minimal_sets(std::move(heavy), rs.ground_size()),
                                     rs.labels());
}

RangeSpace ranges_of_size(const RangeSpace& rs, std::size_t min_size, bool exact) {
  std::vector<IndexSet> picked;
  for (const auto& r : rs.ranges()) {
    if (r.empty()) continue;
    if (exact ? r.size() == min_size : r.size() >= min_size) picked.push_back(r);
  }
  return RangeSpace::from_incidences(rs.ground_size(),
                                     minimal_sets(std::move(picked), rs.ground_size()),
                                     rs.labels());
}

NetVerdict is_epsilon_net(const RangeSpace& rs, const Rational& eps,
                          std::span<const Index> candidate) {
  for (Index i : candidate) {
    if (i >= rs.ground_size()) throw std::out_of_range("candidate index outside ground set");
  }
  const Bitset s = to_bitset(rs.ground_size(), candidate);
  for (std::size_t k = 0; k < rs.num_ranges(); ++k) {
    const auto& r = rs.range(k);
    if (r.empty() || !is_heavy(r.size(), rs.ground_size(), eps)) continue;
    if (!rs.mask(k).intersects(s)) return NetVerdict{false, r};
  }
  return NetVerdict{};
}

namespace {

// Shattering search over elements with pairwise-distinct membership columns.
// Elements with identical columns can never be separated, so dropping
// duplicates does not change the answer.
class Shatterer {
 public:
  explicit Shatterer(const RangeSpace& rs) : total_ranges_(rs.num_ranges()) {
    std::map<IndexSet, Index> seen;
    std::vector<IndexSet> columns(rs.ground_size());
    for (std::size_t k = 0; k < rs.num_ranges(); ++k) {
      for (Index e : rs.range(k)) columns[e].push_back(static_cast<Index>(k));
    }
    compressed_.assign(rs.ground_size(), kNone);
    for (std::size_t e = 0; e < columns.size(); ++e) {
      auto& col = columns[e];
      // An element in every range or in none is not even shattered alone.
      if (col.empty() || col.size() == total_ranges_) continue;
      auto [it, inserted] = seen.emplace(col, static_cast<Index>(incidence_.size()));
      compressed_[e] = it->second;
      if (inserted) incidence_.push_back(std::move(col));
    }
    stamp_.assign(total_ranges_, 0);
    mask_.assign(total_ranges_, 0);
  }

  static constexpr Index kNone = static_cast<Index>(-1);

  // Shattered pairs as adjacency lists (b > a). A pair {a, b} is shattered
  // iff some range holds both, some holds exactly one of each, and some holds
  // neither; only co-occurring pairs can qualify, so they are counted per range.
  std::vector<IndexSet> shattered_pairs(const RangeSpace& rs) {
    const std::size_t m = incidence_.size();
    std::vector<IndexSet> partners(m);
    std::unordered_map<std::uint64_t, std::uint32_t> both;
    std::size_t work = 0;
    for (const auto& r : rs.ranges()) work += r.size() * r.size();
    if (work > 200'000'000) {
      for (Index a = 0; a < m; ++a) {
        for (Index b = a + 1; b < m; ++b) {
          const Index pair[2] = {a, b};
          if (shattered(pair)) partners[a].push_back(b);
        }
      }
      return partners;
    }
    IndexSet ids;
    for (const auto& r : rs.ranges()) {
      ids.clear();
      for (Index e : r) {
        if (compressed_[e] != kNone) ids.push_back(compressed_[e]);
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
          ++both[(std::uint64_t{ids[i]} << 32) | ids[j]];
        }
      }
    }
    for (const auto& [key, count] : both) {
      const Index a = static_cast<Index>(key >> 32);
      const Index b = static_cast<Index>(key & 0xffffffffu);
      const std::size_t da = incidence_[a].size(), db = incidence_[b].size();
      if (da > count && db > count && da + db - count < total_ranges_) {
        partners[a].push_back(b);
      }
    }
    for (auto& p : partners) std::sort(p.begin(), p.end());
    return partners;
  }

  std::size_t size() const { return incidence_.size(); }

  bool shattered(std::span<const Index> set) {
    const std::size_t k = set.size();
    if (k == 0) return true;
    const std::size_t need = std::size_t{1} << k;
    if (need > total_ranges_) return false;
    ++epoch_;
    std::vector<std::size_t> touched;
    for (std::size_t b = 0; b < k; ++b) {
      for (Index r : incidence_[set[b]]) {
        if (stamp_[r] != epoch_) {
          stamp_[r] = epoch_;
          mask_[r] = 0;
          touched.push_back(r);
        }
        mask_[r] |= std::uint64_t{1} << b;
      }
    }
    std::vector<char> traces(need, 0);
    std::size_t distinct = 0;
    if (touched.size() < total_ranges_) {
      traces[0] = 1;
      ++distinct;
    }
    for (std::size_t r : touched) {
      if (!traces[mask_[r]]) {
        traces[mask_[r]] = 1;
        ++distinct;
      }
    }
    return distinct == need;
  }

 private:
  std::size_t total_ranges_;
  std::vector<Index> compressed_;
  std::vector<IndexSet> incidence_;
  std::vector<std::uint64_t> stamp_;
  std::vector<std::uint64_t> mask_;
  std::uint64_t epoch_ = 0;
};

}  // namespace

int vc_dimension(const RangeSpace& rs, int cap) {
  if (cap <= 0 || rs.num_ranges() == 0) return 0;
  // 2^k distinct traces need at least 2^k ranges.
  int limit = 0;
  while (limit < 62 && (std::size_t{1} << (limit + 1)) <= rs.num_ranges()) ++limit;
  cap = std::min(cap, limit);
  if (cap == 0) return 0;

  Shatterer sh(rs);
  const std::size_t m = sh.size();
  if (m == 0) return 0;  // no element is shattered on its own
  if (cap == 1) return 1;

  // Shattered pairs. Every subset of a shattered set is shattered, so a set
  // is only worth testing if all of its pairs are shattered.
  const std::vector<IndexSet> partners = sh.shattered_pairs(rs);
  std::vector<Bitset> adjacent(m, Bitset(m));
  bool any_pair = false;
  for (Index a = 0; a < m; ++a) {
    for (Index b : partners[a]) {
      adjacent[a].set(b);
      adjacent[b].set(a);
      any_pair = true;
    }
  }
  if (!any_pair) return 1;

  int best = 2;
  IndexSet current;
  // Lexicographic depth-first extension: candidates are the common shattered
  // partners above the last element.
  auto extend = [&](auto&& self, const Bitset& candidates) -> void {
    if (best >= cap) return;
    for (auto c = candidates.find_first(); c != Bitset::npos; c = candidates.find_next(c)) {
      current.push_back(static_cast<Index>(c));
      if (current.size() <= 2 || sh.shattered(current)) {
        if (static_cast<int>(current.size()) > best) best = static_cast<int>(current.size());
        if (static_cast<int>(current.size()) < cap) {
          Bitset next = candidates & adjacent[c];
          // only elements above c
          for (auto x = next.find_first(); x != Bitset::npos && x <= c; x = next.find_next(x)) {
            next.reset(x);
          }
          if (next.any()) self(self, next);
        }
      }
      current.pop_back();
      if (best >= cap) return;
    }
  };
  Bitset all(m);
  all.set();
  extend(extend, all);
  return best;
}

RangeSpace replicate_elements(const RangeSpace& rs, std::size_t t) {
  if (t == 0) throw std::invalid_argument("replication factor must be positive");
  std::vector<IndexSet> ranges;
  ranges.reserve(rs.num_ranges());
  for (const auto& r : rs.ranges()) {
    IndexSet out;
    out.reserve(r.size() * t);
    for (Index e : r) {
      for (std::size_t c = 0; c < t; ++c) out.push_back(static_cast<Index>(e * t + c));
    }
    ranges.push_back(std::move(out));
  }
  std::vector<std::string> labels;
  if (!rs.labels().empty()) {
    for (const auto& l : rs.labels()) {
      for (std::size_t c = 0; c < t; ++c) labels.push_back(l + "#" + std::to_string(c));
    }
  }
  return RangeSpace::from_incidences(rs.ground_size() * t, std::move(ranges), std::move(labels));
}

void to_json(nlohmann::ordered_json& j, const RangeSpace& rs) {
  j = nlohmann::ordered_json::object();
  j["n"] = rs.ground_size();
  j["ranges"] = rs.ranges();
  j["labels"] = rs.labels();
}

void from_json(const nlohmann::ordered_json& j, RangeSpace& rs) {
  if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_unsigned()) {
    throw std::invalid_argument("range space: field 'n' missing or not a nonnegative integer");
  }
  if (!j.contains("ranges") || !j.at("ranges").is_array()) {
    throw std::invalid_argument("range space: field 'ranges' missing or not an array");
  }
  std::vector<IndexSet> ranges;
  for (const auto& r : j.at("ranges")) {
    if (!r.is_array()) throw std::invalid_argument("range space: field 'ranges' holds a non-array");
    IndexSet set;
    for (const auto& e : r) {
      if (!e.is_number_unsigned()) {
        throw std::invalid_argument("range space: field 'ranges' holds a non-index entry");
      }
      set.push_back(e.get<Index>());
    }
    ranges.push_back(std::move(set));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  rs = RangeSpace::from_incidences(j.at("n").get<std::size_t>(), std::move(ranges),
                                   std::move(labels));
}

}  // namespace epsnet
