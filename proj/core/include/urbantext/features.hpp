// Copyright 2026 The urbantext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef URBANTEXT_FEATURES_HPP
#define URBANTEXT_FEATURES_HPP

#include <map>
#include <string>
#include <vector>

#include "urbantext/textprep.hpp"

namespace urbantext::features {

/// Cell weighting for the unit x term matrix.
///
/// paper_tfidf, the default, divides the length-normalized tf by
/// ln(N/df); standard_tfidf multiplies instead, as conventional tf-idf
/// would. Terms present in every document make the log zero; their
/// weights are forced to 0 and the terms are flagged.
enum class WeightScheme { raw_tf, normalized_tf, paper_tfidf, standard_tfidf };

std::string to_string(WeightScheme scheme);
WeightScheme weight_scheme_from_string(const std::string& name);

/// Sparse unit x term weight matrix. Rows follow the input document
/// order; columns are vocabulary indices. Immutable once built.
class DocTermMatrix {
 public:
  DocTermMatrix() = default;
  DocTermMatrix(std::vector<std::string> row_units, text::Vocabulary vocab,
                std::vector<std::map<int, double>> rows, WeightScheme scheme,
                std::vector<std::string> flagged_terms);

  const std::vector<std::string>& row_units() const { return row_units_; }
  const text::Vocabulary& vocabulary() const { return vocab_; }
  WeightScheme scheme() const { return scheme_; }
  std::size_t n_rows() const { return row_units_.size(); }
  std::size_t n_terms() const { return vocab_.size(); }

  /// Terms with df == n_docs under an idf scheme (weight forced to 0).
  const std::vector<std::string>& flagged_terms() const { return flagged_terms_; }

  double cell(std::size_t row, int col) const;
  const std::map<int, double>& row(std::size_t row) const { return rows_.at(row); }

  /// Dense column over row_units; throws input_error for unknown terms.
  std::vector<double> term_vector(const std::string& term) const;

  /// Row index of a unit, or -1.
  int row_of(const std::string& unit_id) const;

 private:
  std::vector<std::string> row_units_;
  text::Vocabulary vocab_;
  std::vector<std::map<int, double>> rows_;
  WeightScheme scheme_ = WeightScheme::raw_tf;
  std::vector<std::string> flagged_terms_;
  std::map<std::string, int> unit_to_row_;
};

/// Multiset counts of vocabulary tokens in one document; non-members
/// contribute nothing.
std::map<int, long> term_frequencies(const text::TokenizedDocument& doc,
                                     const text::Vocabulary& vocab);

/// count / token_count, the length-normalized tf. token_count == 0 with a
/// positive count is an invariant violation.
double normalized_tf(long count, long token_count);

/// ln(n_docs / df): the denominator of the printed tf-idf and the factor
/// of the standard one. df == n_docs yields 0 and signals the degenerate
/// case to the caller.
double paper_idf_denominator(long n_docs, long df);

/// df is counted over the matrix's own documents.
DocTermMatrix build_matrix(const std::vector<text::TokenizedDocument>& docs,
                           const text::Vocabulary& vocab, WeightScheme scheme);

std::vector<double> term_vector(const DocTermMatrix& m, const std::string& term);

/// Triplet text `row_unit_id,term,weight` plus a JSON header carrying the
/// scheme, dimensions, row/term lists, and flagged terms. Weights are
/// written with enough digits to round-trip bit-exactly.
void export_matrix(const DocTermMatrix& m, const std::string& header_path,
                   const std::string& triplet_path);
DocTermMatrix import_matrix(const std::string& header_path, const std::string& triplet_path);

}  // namespace urbantext::features

#endif  // URBANTEXT_FEATURES_HPP
