#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace carnot {

using Rational = boost::rational<std::int64_t>;

/// One right-nested bracket r(w) = [w_1,[w_2,[...,[w_{k-1},w_k]]]] of the
/// Baker-Campbell-Hausdorff series, letters 'X' (left factor) and 'Y' (right
/// factor), with its exact coefficient.
struct BchWord {
  std::string word;
  Rational coeff;
};

/// The BCH series log(exp X exp Y) truncated after brackets of length
/// `depth`, stored as a suffix-shared evaluation DAG.
///
/// Coefficients come from expanding exp X exp Y in the free associative
/// algebra and projecting each homogeneous component onto Lie elements with
/// the Dynkin-Specht-Wever map (P_k = (1/k) sum_w c_w r(w)).
struct BchTable {
  struct Node {
    int letter; // 0 = X, 1 = Y
    int child;  // node index of the suffix, or -1 for a single letter
  };
  struct Term {
    int node;
    double coeff;
    int y_degree; // number of Y letters; the term is homogeneous of this degree in Y
  };

  int depth = 0;
  std::vector<Node> nodes; // children precede parents
  std::vector<Term> terms;
  std::vector<BchWord> words;
};

/// Builds the table for nilpotency step `depth` (1 <= depth <= 8).
BchTable make_bch_table(int depth);

/// Coefficients of log(exp X exp Y) in the free associative algebra up to
/// word length `depth`, keyed by word. Exposed for testing.
std::vector<BchWord> bch_associative_series(int depth);

} // namespace carnot
