#include "amalgam/oracle.hpp"

#include <functional>
#include <map>

namespace amalgam {

MomentContext::MomentContext(FiniteCStarAlgebra coefficient,
                             std::vector<ConditionalExpectation> factors)
    : coefficient_(std::move(coefficient)), factors_(std::move(factors)) {
  for (const ConditionalExpectation& ce : factors_) {
    if (ce.source().ambient_dim() != coefficient_.ambient_dim())
      fail(ErrorCode::DimensionMismatch,
           "factor and coefficient algebras must share the ambient algebra");
    if (!ce.target().same_span(coefficient_))
      fail(ErrorCode::MixedCoefficients,
           "factor expectation does not target the coefficient algebra");
  }
}

const ConditionalExpectation& MomentContext::factor(int i) const {
  if (i < 0 || i >= num_factors())
    fail(ErrorCode::IndexUnknown, "factor index " + std::to_string(i));
  return factors_[static_cast<size_t>(i)];
}

namespace {

// Merge adjacent letters from the same factor by multiplying them.
Word merge_adjacent(const Word& word) {
  Word out;
  for (const Letter& l : word) {
    if (!out.empty() && out.back().factor == l.factor)
      out.back().element = out.back().element * l.element;
    else
      out.push_back(l);
  }
  return out;
}

}  // namespace

CMat MomentContext::recursion_moment(const Word& word) const {
  if (word.size() > 12)
    fail(ErrorCode::WordTooLong, "recursion guard at 12 letters");
  const int n_amb = coefficient_.ambient_dim();
  for (const Letter& l : word) {
    if (l.factor < 0 || l.factor >= num_factors())
      fail(ErrorCode::IndexUnknown, "unregistered factor in word");
    if (l.element.rows() != n_amb || l.element.cols() != n_amb)
      fail(ErrorCode::DimensionMismatch, "letter has wrong ambient size");
  }

  // moment(w, k): expectation of w assuming the last k letters are
  // centered. Splits the rightmost uncentered letter a = (a - phi(a))
  // + phi(a); the second term shortens the word through the bimodule
  // property, the first grows the centered suffix. A fully centered
  // alternating word has expectation zero by freeness; single centered
  // letters vanish by definition.
  std::function<CMat(const Word&, size_t)> moment = [&](const Word& w,
                                                        size_t k) -> CMat {
    const size_t n = w.size();
    if (n == 0) return CMat::Identity(n_amb, n_amb);
    if (k >= n) return CMat::Zero(n_amb, n_amb);
    const size_t p = n - k - 1;
    const ConditionalExpectation& phi = factors_[static_cast<size_t>(w[p].factor)];
    CMat b = phi.apply(w[p].element);
    CMat centered = w[p].element - b;

    Word grown = w;
    grown[p].element = centered;
    CMat total = moment(grown, k + 1);

    if (p + 1 == n) {
      Word prefix(w.begin(), w.end() - 1);
      total += moment(merge_adjacent(prefix), 0) * b;
    } else {
      Word shorter;
      shorter.reserve(n - 1);
      for (size_t i = 0; i < p; ++i) shorter.push_back(w[i]);
      Letter absorbed = w[p + 1];
      absorbed.element = b * absorbed.element;
      shorter.push_back(absorbed);
      for (size_t i = p + 2; i < n; ++i) shorter.push_back(w[i]);
      Word merged = merge_adjacent(shorter);
      if (merged.size() == shorter.size()) {
        // Suffix still centered: phi(b a) = b phi(a) = 0.
        total += moment(merged, k);
      } else {
        // The merge consumed the first centered suffix letter.
        total += moment(merged, k > 0 ? k - 1 : 0);
      }
    }
    return total;
  };

  return moment(merge_adjacent(word), 0);
}

std::vector<std::vector<std::vector<int>>> non_crossing_partitions(int n) {
  using Partition = std::vector<std::vector<int>>;
  std::function<std::vector<Partition>(const std::vector<int>&)> build =
      [&](const std::vector<int>& positions) -> std::vector<Partition> {
    if (positions.empty()) return {Partition{}};
    std::vector<Partition> out;
    const int first = positions[0];
    const std::vector<int> rest(positions.begin() + 1, positions.end());
    const size_t r = rest.size();
    // Choose the block containing `first` as a subset of the rest; the
    // complement splits into gaps that are partitioned independently,
    // which enforces the non-crossing property by construction.
    for (size_t mask = 0; mask < (size_t{1} << r); ++mask) {
      std::vector<int> block{first};
      std::vector<std::vector<int>> gaps(1);
      for (size_t i = 0; i < r; ++i) {
        if (mask & (size_t{1} << i)) {
          block.push_back(rest[i]);
          gaps.emplace_back();
        } else {
          gaps.back().push_back(rest[i]);
        }
      }
      std::vector<std::vector<Partition>> gap_parts;
      for (const std::vector<int>& gap : gaps) gap_parts.push_back(build(gap));
      std::vector<size_t> choice(gap_parts.size(), 0);
      while (true) {
        Partition p{block};
        for (size_t g = 0; g < gap_parts.size(); ++g)
          for (const std::vector<int>& blk : gap_parts[g][choice[g]])
            p.push_back(blk);
        out.push_back(std::move(p));
        size_t g = 0;
        while (g < choice.size() && ++choice[g] == gap_parts[g].size()) {
          choice[g] = 0;
          ++g;
        }
        if (g == choice.size()) break;
      }
    }
    return out;
  };
  std::vector<int> all(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
  return build(all);
}

Complex MomentContext::nc_moment(const Word& raw_word) const {
  if (coefficient_.dim() != 1)
    fail(ErrorCode::NotScalarCoefficients,
         "non-crossing summation requires scalar coefficients");
  const int n_amb = coefficient_.ambient_dim();
  Word word = merge_adjacent(raw_word);
  const int n = static_cast<int>(word.size());
  if (n > 8) fail(ErrorCode::WordTooLong, "non-crossing guard at 8 letters");
  if (n == 0) return Complex(1.0);

  auto state = [&](int factor, const CMat& x) -> Complex {
    CMat value = factors_[static_cast<size_t>(factor)].apply(x);
    return value.trace() / static_cast<double>(n_amb);
  };

  // Free cumulants per factor by the recursive moment-cumulant
  // relation, memoized on position subsets of this word.
  std::map<std::vector<int>, Complex> memo;
  std::function<Complex(const std::vector<int>&)> cumulant =
      [&](const std::vector<int>& positions) -> Complex {
    auto it = memo.find(positions);
    if (it != memo.end()) return it->second;
    const int k = static_cast<int>(positions.size());
    const int factor = word[static_cast<size_t>(positions[0])].factor;
    CMat prod = CMat::Identity(n_amb, n_amb);
    for (int p : positions) prod = prod * word[static_cast<size_t>(p)].element;
    Complex value = state(factor, prod);
    for (const auto& partition : non_crossing_partitions(k)) {
      if (partition.size() <= 1) continue;  // skip the one-block partition
      Complex term = 1.0;
      for (const std::vector<int>& blk : partition) {
        std::vector<int> sub;
        sub.reserve(blk.size());
        for (int i : blk) sub.push_back(positions[static_cast<size_t>(i)]);
        term *= cumulant(sub);
      }
      value -= term;
    }
    memo[positions] = value;
    return value;
  };

  Complex total = 0.0;
  for (const auto& partition : non_crossing_partitions(n)) {
    bool monochrome = true;
    for (const std::vector<int>& blk : partition) {
      const int f = word[static_cast<size_t>(blk[0])].factor;
      for (int p : blk)
        if (word[static_cast<size_t>(p)].factor != f) {
          monochrome = false;
          break;
        }
      if (!monochrome) break;
    }
    if (!monochrome) continue;  // mixed free cumulants vanish
    Complex term = 1.0;
    for (const std::vector<int>& blk : partition) term *= cumulant(blk);
    total += term;
  }
  return total;
}

}  // namespace amalgam
