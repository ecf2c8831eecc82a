#pragma once

#include <map>
#include <vector>

#include "escops/arnold.hpp"
#include "escops/homology.hpp"
#include "escops/rational.hpp"

namespace escops::oracle {

using arnold::Factor;
using arnold::Word;

/// Brute-force model of e_n*(r): degreewise linear-algebra quotient of the
/// span of square-free oriented generator words by all relator multiples.
/// Ground truth for the rewriting engine; deliberately shares no code with
/// it beyond the exact linear algebra substrate.
class Oracle {
 public:
  Oracle(int n, int r);

  int n() const { return n_; }
  int r() const { return r_; }

  /// Quotient dimension in one cohomological degree.
  long long dim(int degree);
  /// Dimensions for degrees 0..max_degree inclusive, indexed by degree.
  std::vector<long long> dims(int max_degree);

  /// Canonical coordinates of a generator word modulo the relator span,
  /// expressed over spanning words (complement of the row-reduced span).
  std::map<Word, Rat> normal_form(const std::vector<Factor>& word);

  /// Spanning words of word length p, lexicographic.
  const std::vector<Word>& spanning_words(int p);

 private:
  struct DegreeData {
    std::vector<Word> words;
    std::map<Word, int> index;
    lin::Echelon relators;
  };

  DegreeData& degree_data(int p);

  int n_ = 2;
  int r_ = 0;
  std::vector<Factor> gens_;
  std::map<int, DegreeData> by_length_;
};

std::vector<long long> quotient_dims(int n, int r, int max_degree);
std::map<Word, Rat> oracle_normal_form(const std::vector<Factor>& word, int n, int r);

}  // namespace escops::oracle
