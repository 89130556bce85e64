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

#include "urbantext/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "urbantext/csv.hpp"
#include "urbantext/error.hpp"
#include "urbantext/porter.hpp"

namespace urbantext::text {

namespace {

bool is_ws(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool starts_with_at(const std::string& s, std::size_t pos, const char* prefix) {
  const std::size_t len = std::char_traits<char>::length(prefix);
  return s.compare(pos, len, prefix) == 0;
}

// Token characters: ASCII alphanumerics plus any byte >= 0x80, so UTF-8
// sequences survive splitting intact.
bool is_token_char(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

bool all_digits(const std::string& s) {
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return !s.empty();
}

}  // namespace

StopwordSet::StopwordSet(std::vector<std::string> words) {
  for (auto& w : words) {
    words_.insert(std::move(w));
  }
}

StopwordSet StopwordSet::from_file(const std::string& path) {
  std::vector<std::string> words;
  for (const std::string& raw : csv::read_lines(path)) {
    std::string line = raw;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = csv::trim(line);
    if (!line.empty()) words.push_back(line);
  }
  return StopwordSet(std::move(words));
}

std::string clean_text(const std::string& text, corpus::RecordKind kind) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const bool strip_mentions = (kind == corpus::RecordKind::microblog);
  while (i < text.size()) {
    const bool at_token_start = (i == 0) || is_ws(text[i - 1]);
    const bool url = starts_with_at(text, i, "http://") ||
                     starts_with_at(text, i, "https://") ||
                     (at_token_start && starts_with_at(text, i, "www."));
    const bool mention = strip_mentions && at_token_start && text[i] == '@';
    if (url || mention) {
      while (i < text.size() && !is_ws(text[i])) ++i;
      continue;
    }
    out.push_back(text[i]);
    ++i;
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& text, const StopwordSet& stopwords) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&]() {
    if (cur.size() >= 2 && !all_digits(cur) && !stopwords.contains(cur)) {
      tokens.push_back(cur);
    }
    cur.clear();
  };
  for (char c : text) {
    const auto uc = static_cast<unsigned char>(c);
    if (is_token_char(uc)) {
      cur.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

std::vector<std::string> prepare_tokens(const std::string& text, corpus::RecordKind kind,
                                        const StopwordSet& stopwords) {
  std::vector<std::string> tokens = tokenize(clean_text(text, kind), stopwords);
  for (std::string& t : tokens) {
    t = porter_stem(t);
  }
  return tokens;
}

TokenizedDocument tokenize_document(const corpus::UnitDocument& doc,
                                    corpus::RecordKind kind, const StopwordSet& stopwords) {
  TokenizedDocument out;
  out.unit_id = doc.unit_id;
  out.tokens = prepare_tokens(doc.raw_text, kind, stopwords);
  return out;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::map<std::string, long> total_count,
                       std::map<std::string, long> doc_count)
    : terms_(std::move(terms)),
      total_count_(std::move(total_count)),
      doc_count_(std::move(doc_count)) {
  std::sort(terms_.begin(), terms_.end());
  const auto dup = std::adjacent_find(terms_.begin(), terms_.end());
  if (dup != terms_.end()) {
    throw invariant_error("Vocabulary: duplicate term '" + *dup + "'");
  }
}

Vocabulary Vocabulary::from_terms(std::vector<std::string> terms) {
  return Vocabulary(std::move(terms), {}, {});
}

int Vocabulary::index_of(const std::string& term) const {
  const auto it = std::lower_bound(terms_.begin(), terms_.end(), term);
  if (it != terms_.end() && *it == term) {
    return static_cast<int>(it - terms_.begin());
  }
  return -1;
}

long Vocabulary::total_count(const std::string& term) const {
  const auto it = total_count_.find(term);
  return it == total_count_.end() ? 0 : it->second;
}

long Vocabulary::doc_count(const std::string& term) const {
  const auto it = doc_count_.find(term);
  return it == doc_count_.end() ? 0 : it->second;
}

Vocabulary build_vocabulary(const std::vector<TokenizedDocument>& docs,
                            const std::map<std::string, std::set<std::string>>* record_token_sets,
                            long min_count, long min_docs) {
  if (min_count < 1 || min_docs < 1) {
    throw input_error("build_vocabulary: min_count and min_docs must be >= 1");
  }

  std::map<std::string, long> total;
  std::map<std::string, long> per_unit_doc_count;
  for (const auto& doc : docs) {
    std::set<std::string> seen;
    for (const auto& t : doc.tokens) {
      total[t] += 1;
      seen.insert(t);
    }
    for (const auto& t : seen) {
      per_unit_doc_count[t] += 1;
    }
  }

  std::map<std::string, long> doc_count;
  if (record_token_sets != nullptr) {
    for (const auto& [record_id, terms] : *record_token_sets) {
      for (const auto& t : terms) {
        doc_count[t] += 1;
      }
    }
  } else {
    doc_count = per_unit_doc_count;
  }

  std::vector<std::string> kept;
  std::map<std::string, long> kept_total;
  std::map<std::string, long> kept_docs;
  for (const auto& [term, count] : total) {
    const auto dit = doc_count.find(term);
    const long dc = dit == doc_count.end() ? 0 : dit->second;
    if (count >= min_count && dc >= min_docs) {
      kept.push_back(term);
      kept_total[term] = count;
      kept_docs[term] = dc;
    }
  }
  return Vocabulary(std::move(kept), std::move(kept_total), std::move(kept_docs));
}

std::vector<TokenizedDocument> restrict_to_vocabulary(std::vector<TokenizedDocument> docs,
                                                      const Vocabulary& vocab) {
  for (auto& doc : docs) {
    std::vector<std::string> kept;
    kept.reserve(doc.tokens.size());
    for (auto& t : doc.tokens) {
      if (vocab.contains(t)) kept.push_back(std::move(t));
    }
    doc.tokens = std::move(kept);
  }
  return docs;
}

void write_vocabulary(const Vocabulary& vocab, const std::string& path) {
  std::ostringstream out;
  out << "term,index,total_count,doc_count\n";
  const auto& terms = vocab.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out << terms[i] << ',' << i << ',' << vocab.total_count(terms[i]) << ','
        << vocab.doc_count(terms[i]) << '\n';
  }
  csv::write_file(path, out.str());
}

Vocabulary load_vocabulary(const std::string& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty() || csv::trim(lines[0]) != "term,index,total_count,doc_count") {
    throw input_error(path + ": expected header 'term,index,total_count,doc_count'");
  }
  std::vector<std::string> terms;
  std::map<std::string, long> total;
  std::map<std::string, long> docs;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (csv::trim(lines[i]).empty()) continue;
    const auto f = csv::split_fields(lines[i]);
    const std::string ctx = path + " line " + std::to_string(i + 1);
    if (f.size() != 4) {
      throw input_error(ctx + ": expected 4 fields");
    }
    const std::string term = csv::trim(f[0]);
    terms.push_back(term);
    total[term] = csv::parse_long(f[2], ctx);
    docs[term] = csv::parse_long(f[3], ctx);
  }
  return Vocabulary(std::move(terms), std::move(total), std::move(docs));
}

}  // namespace urbantext::text
