#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stonekit/bits.hpp"
#include "stonekit/error.hpp"

namespace stonekit {

using Pair = std::pair<std::size_t, std::size_t>;
/// A function between finite carriers, given by the image of each index.
using Assignment = std::vector<std::size_t>;

/// Finite partial order on elements 0..n-1. The relation is always stored
/// closed; bit y of up(x) is set iff x <= y.
class FinPoset {
 public:
  FinPoset() = default;

  /// Reflexive-transitive closure of the generating pairs. Throws CycleError
  /// when the closure is not antisymmetric, IndexError on an out-of-range pair.
  static FinPoset from_pairs(std::size_t n, std::span<const Pair> pairs, std::vector<std::string> labels = {}) {
    check_point_count(n);
    std::vector<Mask> rows(n, 0);
    for (const auto& [x, y] : pairs) {
      if (x >= n || y >= n)
        throw Error(ErrorKind::Index, detail::concat("pair (", x, ",", y, ") out of range for n=", n), {x, y});
      rows[x] |= bit(y);
    }
    return from_rows(std::move(rows), std::move(labels));
  }

  static FinPoset from_rows(std::vector<Mask> rows, std::vector<std::string> labels = {}) {
    const std::size_t n = rows.size();
    check_point_count(n);
    if (!labels.empty() && labels.size() != n)
      throw Error(ErrorKind::Index, detail::concat("expected ", n, " labels, got ", labels.size()));
    for (std::size_t x = 0; x < n; ++x)
      if (rows[x] & ~full_mask(n)) throw Error(ErrorKind::Index, "relation row out of range", {x});
    close_preorder(rows);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (has(rows[x], y) && has(rows[y], x))
          throw Error(ErrorKind::Cycle, detail::concat("elements ", x, " and ", y, " lie on a cycle"), {x, y});
    FinPoset p;
    p.down_ = transpose(rows);
    p.up_ = std::move(rows);
    p.labels_ = std::move(labels);
    return p;
  }

  static FinPoset chain(std::size_t n) {
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    return from_pairs(n, pairs);
  }

  static FinPoset antichain(std::size_t n) { return from_pairs(n, {}); }

  std::size_t size() const { return up_.size(); }
  bool leq(std::size_t x, std::size_t y) const { return has(up_[x], y); }
  Mask up(std::size_t x) const { return up_[x]; }
  Mask down(std::size_t x) const { return down_[x]; }
  const std::vector<Mask>& up_rows() const { return up_; }

  const std::vector<std::string>& labels() const { return labels_; }
  bool has_labels() const { return !labels_.empty(); }
  std::string label(std::size_t x) const { return labels_.empty() ? std::to_string(x) : labels_[x]; }

  std::size_t comparable_pairs() const {
    std::size_t c = 0;
    for (Mask m : up_) c += static_cast<std::size_t>(std::popcount(m)) - 1;
    return c;
  }

  /// Covering pairs (x, y): x < y with nothing strictly between, sorted.
  std::vector<Pair> covers() const {
    std::vector<Pair> out;
    for (std::size_t x = 0; x < size(); ++x) {
      const Mask strict_up = up_[x] & ~bit(x);
      for_each_bit(strict_up, [&](std::size_t y) {
        const Mask between = strict_up & down_[y] & ~bit(y);
        if (between == 0) out.emplace_back(x, y);
      });
    }
    return out;
  }

  friend bool operator==(const FinPoset& a, const FinPoset& b) {
    return a.up_ == b.up_ && a.labels_ == b.labels_;
  }

 private:
  std::vector<Mask> up_;
  std::vector<Mask> down_;
  std::vector<std::string> labels_;
};

/// Spec-named constructor; identical to FinPoset::from_pairs.
inline FinPoset validate_poset(std::size_t n, std::span<const Pair> pairs, std::vector<std::string> labels = {}) {
  return FinPoset::from_pairs(n, pairs, std::move(labels));
}

inline FinPoset opposite(const FinPoset& p) {
  return FinPoset::from_rows(transpose(p.up_rows()), p.labels());
}

/// P followed by Q; elements of Q are shifted by |P|.
inline FinPoset disjoint_union(const FinPoset& p, const FinPoset& q) {
  check_point_count(p.size() + q.size());
  std::vector<Mask> rows;
  for (std::size_t x = 0; x < p.size(); ++x) rows.push_back(p.up(x));
  for (std::size_t x = 0; x < q.size(); ++x) rows.push_back(q.up(x) << p.size());
  std::vector<std::string> labels;
  if (p.has_labels() || q.has_labels()) {
    for (std::size_t x = 0; x < p.size(); ++x) labels.push_back(p.label(x));
    for (std::size_t x = 0; x < q.size(); ++x) labels.push_back(q.label(x));
  }
  return FinPoset::from_rows(std::move(rows), std::move(labels));
}

inline bool is_downset(const FinPoset& p, Mask s) {
  bool ok = true;
  for_each_bit(s, [&](std::size_t y) { ok = ok && subset(p.down(y), s); });
  return ok;
}

/// All down-closed subsets, sorted by cardinality then mask. Throws SizeError
/// once more than `cap` downsets have been produced.
inline std::vector<Mask> downsets(const FinPoset& p, std::size_t cap = downset_cap()) {
  const std::size_t n = p.size();
  // |down(x)| strictly increases along <, so this is a linear extension.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(p.down(a)) < std::popcount(p.down(b));
  });

  std::vector<Mask> out;
  // Explicit stack of (depth, partial downset).
  std::vector<std::pair<std::size_t, Mask>> stack{{0, Mask{0}}};
  while (!stack.empty()) {
    auto [k, cur] = stack.back();
    stack.pop_back();
    if (k == n) {
      out.push_back(cur);
      if (out.size() > cap)
        throw Error(ErrorKind::Size, detail::concat("downset count exceeds cap ", cap));
      continue;
    }
    const std::size_t x = order[k];
    stack.emplace_back(k + 1, cur);
    if (subset(p.down(x) & ~bit(x), cur)) stack.emplace_back(k + 1, cur | bit(x));
  }
  std::sort(out.begin(), out.end(), CanonicalLess{});
  return out;
}

/// Order-preserving map between finite posets.
class MonotoneMap {
 public:
  static MonotoneMap validate(FinPoset src, FinPoset dst, Assignment assign) {
    if (assign.size() != src.size())
      throw Error(ErrorKind::Index, detail::concat("assignment has ", assign.size(), " entries, expected ", src.size()));
    for (std::size_t x = 0; x < assign.size(); ++x)
      if (assign[x] >= dst.size()) throw Error(ErrorKind::Index, "assignment value out of range", {x, assign[x]});
    for (std::size_t x = 0; x < src.size(); ++x)
      for (std::size_t y = 0; y < src.size(); ++y)
        if (src.leq(x, y) && !dst.leq(assign[x], assign[y]))
          throw Error(ErrorKind::NotMonotone, detail::concat(x, " <= ", y, " but images are not ordered"), {x, y});
    MonotoneMap m;
    m.src_ = std::move(src);
    m.dst_ = std::move(dst);
    m.assign_ = std::move(assign);
    return m;
  }

  const FinPoset& src() const { return src_; }
  const FinPoset& dst() const { return dst_; }
  const Assignment& assignment() const { return assign_; }
  std::size_t operator()(std::size_t x) const { return assign_[x]; }

 private:
  FinPoset src_, dst_;
  Assignment assign_;
};

namespace detail {

// Joint colour refinement on two relations (posets or preorders): colours
// start from (|up|, |down|) and are refined by the multisets of strict-up and
// strict-down colours.
template <typename Rel>
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> refine_colours(const Rel& p, const Rel& q) {
  using Signature = std::vector<std::size_t>;
  auto initial = [](const Rel& s) {
    std::vector<Signature> sig(s.size());
    for (std::size_t x = 0; x < s.size(); ++x)
      sig[x] = {static_cast<std::size_t>(std::popcount(s.up(x))), static_cast<std::size_t>(std::popcount(s.down(x)))};
    return sig;
  };
  std::vector<Signature> sp = initial(p), sq = initial(q);
  std::vector<std::size_t> cp, cq;
  std::size_t classes = 0;
  for (std::size_t round = 0;; ++round) {
    std::map<Signature, std::size_t> ids;
    for (const auto& s : sp) ids.emplace(s, 0);
    for (const auto& s : sq) ids.emplace(s, 0);
    std::size_t next = 0;
    for (auto& [s, id] : ids) id = next++;
    cp.assign(p.size(), 0);
    cq.assign(q.size(), 0);
    for (std::size_t x = 0; x < p.size(); ++x) cp[x] = ids[sp[x]];
    for (std::size_t x = 0; x < q.size(); ++x) cq[x] = ids[sq[x]];
    if (round > 0 && next == classes) break;
    classes = next;
    auto refine = [](const Rel& s, const std::vector<std::size_t>& c) {
      std::vector<Signature> sig(s.size());
      for (std::size_t x = 0; x < s.size(); ++x) {
        Signature ups, downs;
        for_each_bit(s.up(x) & ~bit(x), [&](std::size_t y) { ups.push_back(c[y]); });
        for_each_bit(s.down(x) & ~bit(x), [&](std::size_t y) { downs.push_back(c[y]); });
        std::sort(ups.begin(), ups.end());
        std::sort(downs.begin(), downs.end());
        Signature out{c[x], ups.size()};
        out.insert(out.end(), ups.begin(), ups.end());
        out.insert(out.end(), downs.begin(), downs.end());
        sig[x] = std::move(out);
      }
      return sig;
    };
    sp = refine(p, cp);
    sq = refine(q, cq);
  }
  return {cp, cq};
}

// Exact backtracking over elements of P in index order, trying candidates of
// Q lowest index first, so the witness is deterministic.
template <typename Rel>
std::optional<std::vector<std::size_t>> relation_isomorphism(const Rel& p, const Rel& q) {
  const std::size_t n = p.size();
  if (n != q.size()) return std::nullopt;
  if (n == 0) return std::vector<std::size_t>{};
  std::size_t pairs_p = 0, pairs_q = 0;
  for (std::size_t x = 0; x < n; ++x) {
    pairs_p += static_cast<std::size_t>(std::popcount(p.up(x)));
    pairs_q += static_cast<std::size_t>(std::popcount(q.up(x)));
  }
  if (pairs_p != pairs_q) return std::nullopt;
  auto [cp, cq] = refine_colours(p, q);
  {
    auto hp = cp, hq = cq;
    std::sort(hp.begin(), hp.end());
    std::sort(hq.begin(), hq.end());
    if (hp != hq) return std::nullopt;
  }

  std::vector<std::size_t> w(n, 0);
  Mask used = 0;
  // Iterative backtracking: cand[k] is the next Q candidate to try for element k.
  std::vector<std::size_t> cand(n + 1, 0);
  std::size_t k = 0;
  while (true) {
    if (k == n) return w;
    bool placed = false;
    for (std::size_t c = cand[k]; c < n; ++c) {
      if (has(used, c) || cq[c] != cp[k]) continue;
      bool ok = true;
      for (std::size_t a = 0; a < k && ok; ++a)
        ok = p.leq(a, k) == q.leq(w[a], c) && p.leq(k, a) == q.leq(c, w[a]);
      if (!ok) continue;
      w[k] = c;
      used |= bit(c);
      cand[k] = c + 1;
      placed = true;
      break;
    }
    if (placed) {
      ++k;
      cand[k] = 0;
      continue;
    }
    if (k == 0) return std::nullopt;
    cand[k] = 0;
    --k;
    used &= ~bit(w[k]);
  }
}

}  // namespace detail

/// Order isomorphism P -> Q, if one exists; lowest-index-first witness.
inline std::optional<Assignment> is_isomorphic(const FinPoset& p, const FinPoset& q) {
  return detail::relation_isomorphism(p, q);
}

inline Assignment invert(const Assignment& bijection) {
  Assignment inv(bijection.size(), 0);
  for (std::size_t x = 0; x < bijection.size(); ++x) inv[bijection[x]] = x;
  return inv;
}

/// (outer ∘ inner)(x) = outer[inner[x]].
inline Assignment compose(const Assignment& outer, const Assignment& inner) {
  Assignment out(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) out[x] = outer[inner[x]];
  return out;
}

inline Assignment identity_assignment(std::size_t n) {
  Assignment out(n);
  for (std::size_t x = 0; x < n; ++x) out[x] = x;
  return out;
}

inline bool is_injective(const Assignment& a) {
  std::vector<std::size_t> s = a;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

inline bool is_surjective(const Assignment& a, std::size_t codomain) {
  std::vector<bool> hit(codomain, false);
  for (std::size_t v : a) hit[v] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

/// Checks that `w` is an order isomorphism P -> Q.
inline bool is_order_isomorphism(const FinPoset& p, const FinPoset& q, const Assignment& w) {
  if (w.size() != p.size() || p.size() != q.size()) return false;
  for (std::size_t v : w)
    if (v >= q.size()) return false;
  if (!is_injective(w)) return false;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(x, y) != q.leq(w[x], w[y])) return false;
  return true;
}

}  // namespace stonekit
