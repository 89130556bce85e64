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

#ifndef URBANTEXT_TEXTPREP_HPP
#define URBANTEXT_TEXTPREP_HPP

#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "urbantext/corpus.hpp"

namespace urbantext::text {

/// Surface-form stopwords, matched against tokens after splitting and
/// lowercasing but before stemming.
class StopwordSet {
 public:
  StopwordSet() = default;
  explicit StopwordSet(std::vector<std::string> words);

  /// The bundled English list (~300 function words).
  static StopwordSet builtin();

  /// One word per line, '#' starts a comment.
  static StopwordSet from_file(const std::string& path);

  bool contains(const std::string& token) const {
    return words_.count(token) != 0;
  }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Stemmed token stream for one unit document. token_count() is the
/// non-distinct length, the denominator of normalized tf.
struct TokenizedDocument {
  std::string unit_id;
  std::vector<std::string> tokens;

  long token_count() const { return static_cast<long>(tokens.size()); }
};

/// Filtered term universe: term -> dense column index in lexicographic
/// order, plus corpus-wide counts used by the frequency filter.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Terms are sorted and indexed 0..n-1; counts maps may be empty for
  /// vocabularies reconstructed from a persisted matrix.
  Vocabulary(std::vector<std::string> terms, std::map<std::string, long> total_count,
             std::map<std::string, long> doc_count);

  static Vocabulary from_terms(std::vector<std::string> terms);

  const std::vector<std::string>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Column of a term, or -1 if not a member.
  int index_of(const std::string& term) const;
  bool contains(const std::string& term) const { return index_of(term) >= 0; }

  long total_count(const std::string& term) const;
  long doc_count(const std::string& term) const;

 private:
  std::vector<std::string> terms_;  // sorted
  std::map<std::string, long> total_count_;
  std::map<std::string, long> doc_count_;
};

/// Strip URLs (http://, https://, or www. at a token start) for every
/// kind; additionally strip @-prefixed tokens from microblog text.
std::string clean_text(const std::string& text, corpus::RecordKind kind);

/// Lowercase, split on non-alphanumeric (bytes >= 0x80 are treated as
/// letters), drop tokens shorter than 2 chars, all-digit tokens, and
/// stopwords. No stemming here.
std::vector<std::string> tokenize(const std::string& text, const StopwordSet& stopwords);

/// clean + tokenize + stem in one go.
std::vector<std::string> prepare_tokens(const std::string& text, corpus::RecordKind kind,
                                        const StopwordSet& stopwords);

TokenizedDocument tokenize_document(const corpus::UnitDocument& doc,
                                    corpus::RecordKind kind, const StopwordSet& stopwords);

/// Keep a term iff total_count >= min_count AND doc_count >= min_docs.
/// doc_count is over raw records when record_token_sets is given, else
/// over unit documents.
Vocabulary build_vocabulary(const std::vector<TokenizedDocument>& docs,
                            const std::map<std::string, std::set<std::string>>* record_token_sets,
                            long min_count = 5, long min_docs = 5);

/// Drop tokens that are not vocabulary members.
std::vector<TokenizedDocument> restrict_to_vocabulary(std::vector<TokenizedDocument> docs,
                                                      const Vocabulary& vocab);

/// Persisted vocabulary: `term,index,total_count,doc_count`.
void write_vocabulary(const Vocabulary& vocab, const std::string& path);
Vocabulary load_vocabulary(const std::string& path);

}  // namespace urbantext::text

#endif  // URBANTEXT_TEXTPREP_HPP
