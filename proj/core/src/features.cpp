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

#include "urbantext/features.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "urbantext/csv.hpp"
#include "urbantext/error.hpp"

namespace urbantext::features {

std::string to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::raw_tf: return "raw_tf";
    case WeightScheme::normalized_tf: return "normalized_tf";
    case WeightScheme::paper_tfidf: return "paper_tfidf";
    case WeightScheme::standard_tfidf: return "standard_tfidf";
  }
  throw invariant_error("unknown weight scheme");
}

WeightScheme weight_scheme_from_string(const std::string& name) {
  if (name == "raw_tf") return WeightScheme::raw_tf;
  if (name == "normalized_tf") return WeightScheme::normalized_tf;
  if (name == "paper_tfidf") return WeightScheme::paper_tfidf;
  if (name == "standard_tfidf") return WeightScheme::standard_tfidf;
  throw input_error("unknown weight scheme '" + name + "'");
}

DocTermMatrix::DocTermMatrix(std::vector<std::string> row_units, text::Vocabulary vocab,
                             std::vector<std::map<int, double>> rows, WeightScheme scheme,
                             std::vector<std::string> flagged_terms)
    : row_units_(std::move(row_units)),
      vocab_(std::move(vocab)),
      rows_(std::move(rows)),
      scheme_(scheme),
      flagged_terms_(std::move(flagged_terms)) {
  if (rows_.size() != row_units_.size()) {
    throw invariant_error("DocTermMatrix: row count mismatch");
  }
  const int n_cols = static_cast<int>(vocab_.size());
  for (const auto& row : rows_) {
    for (const auto& [col, w] : row) {
      if (col < 0 || col >= n_cols) {
        throw invariant_error("DocTermMatrix: column index out of range");
      }
      if (!std::isfinite(w)) {
        throw invariant_error("DocTermMatrix: non-finite weight");
      }
    }
  }
  for (std::size_t r = 0; r < row_units_.size(); ++r) {
    if (!unit_to_row_.emplace(row_units_[r], static_cast<int>(r)).second) {
      throw invariant_error("DocTermMatrix: duplicate row unit '" + row_units_[r] + "'");
    }
  }
}

double DocTermMatrix::cell(std::size_t row, int col) const {
  const auto& r = rows_.at(row);
  const auto it = r.find(col);
  return it == r.end() ? 0.0 : it->second;
}

std::vector<double> DocTermMatrix::term_vector(const std::string& term) const {
  const int col = vocab_.index_of(term);
  if (col < 0) {
    throw input_error("term_vector: unknown term '" + term + "'");
  }
  std::vector<double> v(n_rows(), 0.0);
  for (std::size_t r = 0; r < n_rows(); ++r) {
    v[r] = cell(r, col);
  }
  return v;
}

int DocTermMatrix::row_of(const std::string& unit_id) const {
  const auto it = unit_to_row_.find(unit_id);
  return it == unit_to_row_.end() ? -1 : it->second;
}

std::map<int, long> term_frequencies(const text::TokenizedDocument& doc,
                                     const text::Vocabulary& vocab) {
  std::map<int, long> counts;
  for (const auto& t : doc.tokens) {
    const int col = vocab.index_of(t);
    if (col >= 0) counts[col] += 1;
  }
  return counts;
}

double normalized_tf(long count, long token_count) {
  if (count == 0) return 0.0;
  if (token_count <= 0) {
    throw invariant_error("normalized_tf: positive count with zero token_count");
  }
  return static_cast<double>(count) / static_cast<double>(token_count);
}

double paper_idf_denominator(long n_docs, long df) {
  if (n_docs < 1 || df < 1 || df > n_docs) {
    throw invariant_error("paper_idf_denominator: need 1 <= df <= n_docs");
  }
  return std::log(static_cast<double>(n_docs) / static_cast<double>(df));
}

DocTermMatrix build_matrix(const std::vector<text::TokenizedDocument>& docs,
                           const text::Vocabulary& vocab, WeightScheme scheme) {
  if (docs.empty()) {
    throw input_error("build_matrix: no documents");
  }
  if (vocab.empty()) {
    throw input_error("build_matrix: empty vocabulary");
  }

  const long n_docs = static_cast<long>(docs.size());
  std::vector<std::map<int, long>> counts;
  counts.reserve(docs.size());
  std::vector<long> df(vocab.size(), 0);
  for (const auto& doc : docs) {
    counts.push_back(term_frequencies(doc, vocab));
    for (const auto& [col, c] : counts.back()) {
      df[static_cast<std::size_t>(col)] += 1;
    }
  }

  std::vector<std::string> flagged;
  const bool uses_idf =
      scheme == WeightScheme::paper_tfidf || scheme == WeightScheme::standard_tfidf;
  if (uses_idf) {
    for (std::size_t c = 0; c < vocab.size(); ++c) {
      if (df[c] == n_docs) flagged.push_back(vocab.terms()[c]);
    }
  }

  std::vector<std::string> row_units;
  row_units.reserve(docs.size());
  std::vector<std::map<int, double>> rows;
  rows.reserve(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    row_units.push_back(docs[d].unit_id);
    std::map<int, double> row;
    for (const auto& [col, c] : counts[d]) {
      double w = 0.0;
      switch (scheme) {
        case WeightScheme::raw_tf:
          w = static_cast<double>(c);
          break;
        case WeightScheme::normalized_tf:
          w = normalized_tf(c, docs[d].token_count());
          break;
        case WeightScheme::paper_tfidf: {
          const double denom = paper_idf_denominator(n_docs, df[static_cast<std::size_t>(col)]);
          w = denom == 0.0 ? 0.0 : normalized_tf(c, docs[d].token_count()) / denom;
          break;
        }
        case WeightScheme::standard_tfidf:
          w = normalized_tf(c, docs[d].token_count()) *
              paper_idf_denominator(n_docs, df[static_cast<std::size_t>(col)]);
          break;
      }
      if (w != 0.0) row[col] = w;
    }
    rows.push_back(std::move(row));
  }
  return DocTermMatrix(std::move(row_units), vocab, std::move(rows), scheme,
                       std::move(flagged));
}

std::vector<double> term_vector(const DocTermMatrix& m, const std::string& term) {
  return m.term_vector(term);
}

void export_matrix(const DocTermMatrix& m, const std::string& header_path,
                   const std::string& triplet_path) {
  nlohmann::json header;
  header["scheme"] = to_string(m.scheme());
  header["n_rows"] = m.n_rows();
  header["n_terms"] = m.n_terms();
  header["row_units"] = m.row_units();
  header["terms"] = m.vocabulary().terms();
  header["flagged_terms"] = m.flagged_terms();
  csv::write_file(header_path, header.dump(2) + "\n");

  std::ostringstream out;
  out << "row_unit_id,term,weight\n";
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    for (const auto& [col, w] : m.row(r)) {
      out << m.row_units()[r] << ',' << m.vocabulary().terms()[static_cast<std::size_t>(col)]
          << ',' << csv::format_double(w) << '\n';
    }
  }
  csv::write_file(triplet_path, out.str());
}

DocTermMatrix import_matrix(const std::string& header_path, const std::string& triplet_path) {
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(csv::read_file(header_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error(header_path + ": invalid JSON: " + e.what());
  }
  WeightScheme scheme;
  std::vector<std::string> row_units;
  std::vector<std::string> terms;
  std::vector<std::string> flagged;
  try {
    scheme = weight_scheme_from_string(header.at("scheme").get<std::string>());
    row_units = header.at("row_units").get<std::vector<std::string>>();
    terms = header.at("terms").get<std::vector<std::string>>();
    flagged = header.at("flagged_terms").get<std::vector<std::string>>();
    if (header.at("n_rows").get<std::size_t>() != row_units.size() ||
        header.at("n_terms").get<std::size_t>() != terms.size()) {
      throw input_error(header_path + ": dimension fields disagree with lists");
    }
  } catch (const nlohmann::json::exception& e) {
    throw input_error(header_path + ": bad matrix header: " + e.what());
  }

  text::Vocabulary vocab = text::Vocabulary::from_terms(terms);
  std::map<std::string, int> unit_row;
  for (std::size_t r = 0; r < row_units.size(); ++r) {
    unit_row[row_units[r]] = static_cast<int>(r);
  }
  std::vector<std::map<int, double>> rows(row_units.size());

  const auto lines = csv::read_lines(triplet_path);
  if (lines.empty() || csv::trim(lines[0]) != "row_unit_id,term,weight") {
    throw input_error(triplet_path + ": expected header 'row_unit_id,term,weight'");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const auto f = csv::split_fields(lines[i]);
    const std::string ctx = triplet_path + " line " + std::to_string(i + 1);
    if (f.size() != 3) {
      throw input_error(ctx + ": expected 3 fields");
    }
    const auto uit = unit_row.find(csv::trim(f[0]));
    if (uit == unit_row.end()) {
      throw input_error(ctx + ": unit not in header row_units");
    }
    const int col = vocab.index_of(csv::trim(f[1]));
    if (col < 0) {
      throw input_error(ctx + ": term not in header terms");
    }
    rows[static_cast<std::size_t>(uit->second)][col] = csv::parse_double(f[2], ctx);
  }
  return DocTermMatrix(std::move(row_units), std::move(vocab), std::move(rows), scheme,
                       std::move(flagged));
}

}  // namespace urbantext::features
