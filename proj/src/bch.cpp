#include "carnot/bch.hpp"

#include "carnot/errors.hpp"

#include <map>
#include <utility>

namespace carnot {

namespace {

// Truncated element of the free associative algebra on {X, Y}.
using Word = std::string;
using Series = std::map<Word, Rational>;

Rational factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i)
    f *= i;
  return Rational(f);
}

void add_to(Series &s, const Word &w, const Rational &c) {
  if (c.numerator() == 0)
    return;
  auto [it, inserted] = s.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.numerator() == 0)
      s.erase(it);
  }
}

Series product(const Series &a, const Series &b, int depth) {
  Series out;
  for (const auto &[wa, ca] : a)
    for (const auto &[wb, cb] : b)
      if (static_cast<int>(wa.size() + wb.size()) <= depth)
        add_to(out, wa + wb, ca * cb);
  return out;
}

} // namespace

std::vector<BchWord> bch_associative_series(int depth) {
  if (depth < 1 || depth > 8)
    throw InvalidArgument("BCH depth must lie in [1, 8], got " + std::to_string(depth));

  // W = exp(X) exp(Y) - 1, expanded up to length `depth`.
  Series w;
  for (int a = 0; a <= depth; ++a)
    for (int b = 0; a + b <= depth; ++b)
      if (a + b > 0)
        add_to(w, Word(a, 'X') + Word(b, 'Y'), Rational(1) / (factorial(a) * factorial(b)));

  // log(1 + W) = sum_m (-1)^{m+1} W^m / m; W has no constant term so m <= depth.
  Series log_series;
  Series power = w;
  for (int m = 1; m <= depth; ++m) {
    const Rational sign = (m % 2 == 1) ? Rational(1) : Rational(-1);
    for (const auto &[word, c] : power)
      add_to(log_series, word, sign * c / Rational(m));
    power = product(power, w, depth);
  }

  std::vector<BchWord> out;
  out.reserve(log_series.size());
  for (const auto &[word, c] : log_series)
    out.push_back({word, c});
  return out;
}

BchTable make_bch_table(int depth) {
  BchTable table;
  table.depth = depth;

  std::map<Word, int> node_of;
  // Nodes for all suffixes, shortest first so children precede parents.
  auto node_for = [&](const Word &word, auto &&self) -> int {
    if (auto it = node_of.find(word); it != node_of.end())
      return it->second;
    const int letter = word.front() == 'X' ? 0 : 1;
    const int child = word.size() == 1 ? -1 : self(word.substr(1), self);
    table.nodes.push_back({letter, child});
    const int idx = static_cast<int>(table.nodes.size()) - 1;
    node_of.emplace(word, idx);
    return idx;
  };

  for (const auto &[word, c] : bch_associative_series(depth)) {
    const auto k = static_cast<std::int64_t>(word.size());
    // r(w) vanishes identically when the innermost bracket is [a, a].
    if (k >= 2 && word[k - 1] == word[k - 2])
      continue;
    const Rational coeff = c / Rational(k);
    if (coeff.numerator() == 0)
      continue;
    table.words.push_back({word, coeff});
    int y_degree = 0;
    for (char ch : word)
      y_degree += ch == 'Y';
    const int node = node_for(word, node_for);
    table.terms.push_back({node, boost::rational_cast<double>(coeff), y_degree});
  }
  return table;
}

} // namespace carnot
