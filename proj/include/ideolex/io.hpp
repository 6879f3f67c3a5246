#ifndef IDEOLEX_IO_HPP
#define IDEOLEX_IO_HPP

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ideolex/core.hpp"
#include "ideolex/ontology.hpp"

namespace ideolex {

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                                : what),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// UTF-8 <-> UTF-32

inline std::u32string utf8_decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char b0 = text[i];
    char32_t cp;
    std::size_t len;
    if (b0 < 0x80) { cp = b0; len = 1; }
    else if ((b0 & 0xE0) == 0xC0) { cp = b0 & 0x1F; len = 2; }
    else if ((b0 & 0xF0) == 0xE0) { cp = b0 & 0x0F; len = 3; }
    else if ((b0 & 0xF8) == 0xF0) { cp = b0 & 0x07; len = 4; }
    else throw parse_error("invalid UTF-8 byte");
    if (i + len > text.size()) throw parse_error("truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char b = text[i + k];
      if ((b & 0xC0) != 0x80) throw parse_error("invalid UTF-8 continuation");
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
      throw parse_error("invalid Unicode scalar value");
    // Reject overlong encodings.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000))
      throw parse_error("overlong UTF-8 sequence");
    out.push_back(cp);
    i += len;
  }
  return out;
}

inline std::string utf8_encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Small text helpers

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

// Shortest-round-trip decimal form of a double (17 significant digits).
inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline double parse_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw parse_error("invalid number '" + s + "'", line);
  return v;
}

}  // namespace detail

/// Comma-separated category list ("happy,angry,sad,fear") -> scheme.
inline SentimentScheme parse_scheme(std::string_view spec) {
  std::vector<std::string> names;
  for (auto& part : detail::split(spec, ',')) {
    auto t = detail::trim(part);
    if (t.empty()) throw parse_error("empty category name in scheme spec");
    names.push_back(std::move(t));
  }
  return SentimentScheme(std::move(names));
}

/// Scans a TSV file's comment lines for "#scheme: c1,c2,...".
inline std::optional<SentimentScheme> scheme_from_header(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto t = detail::trim(line);
    if (t.rfind("#scheme:", 0) == 0)
      return parse_scheme(t.substr(8));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lexicon / word-list parsing

/// One word<TAB>category record per non-empty, non-comment line. Duplicate
/// identical records collapse; the same word with two categories is an error.
inline TrainingLexicon parse_training_file(std::string_view text,
                                           const SentimentScheme& scheme) {
  TrainingLexicon lex{scheme, {}};
  std::map<std::u32string, std::size_t> seen;  // word -> category index
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = detail::split(t, '\t');
    if (fields.size() != 2)
      throw parse_error("expected word<TAB>category", lineno);
    const std::string word_text = detail::trim(fields[0]);
    const std::string category = detail::trim(fields[1]);
    if (word_text.empty()) throw parse_error("empty word", lineno);
    const std::size_t idx = scheme.index_of(category);
    if (idx == SentimentScheme::npos)
      throw parse_error("unknown category '" + category + "'", lineno);
    std::u32string chars = utf8_decode(word_text);
    if (auto it = seen.find(chars); it != seen.end()) {
      if (it->second != idx)
        throw parse_error("word '" + word_text + "' already annotated as '" +
                              scheme.name(it->second) + "'",
                          lineno);
      continue;  // exact duplicate
    }
    seen.emplace(chars, idx);
    lex.words.emplace_back(std::move(chars), one_hot(scheme, idx));
  }
  if (lex.words.empty()) throw parse_error("training file contains no words");
  return lex;
}

/// One negation character per non-empty, non-comment line.
inline NegationSet parse_negation_file(std::string_view text) {
  NegationSet negs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto chars = utf8_decode(t);
    if (chars.size() != 1)
      throw parse_error("expected exactly one character, got " +
                            std::to_string(chars.size()),
                        lineno);
    negs.chars.insert(chars[0]);
  }
  return negs;
}

// ---------------------------------------------------------------------------
// Ontology document (versioned, canonical, deterministic)

inline constexpr int kOntologyFormatVersion = 1;

/// Canonical text form: header lines, then entries sorted by code point,
/// then diagnostics. Byte-identical for semantically equal ontologies.
inline std::string serialize_ontology(const CharacterOntology& o) {
  std::string out;
  out += "ideolex-ontology v" + std::to_string(kOntologyFormatVersion) + "\n";
  out += "scheme";
  for (const auto& c : o.scheme.categories()) out += "\t" + c;
  out += "\n";
  out += "params\t" + std::to_string(o.params.threshold) + "\t" +
         detail::fmt_double(o.params.lvb) + "\t" + detail::fmt_double(o.params.uvb) +
         "\n";
  out += "negations";
  for (char32_t c : o.negations.chars) out += "\t" + utf8_encode(std::u32string(1, c));
  out += "\n";
  for (const auto& [c, e] : o.entries) {
    out += "entry\t" + utf8_encode(std::u32string(1, c)) + "\t";
    out += e.is_key ? "key" : "plain";
    out += "\t" + std::to_string(e.support);
    for (double p : e.vector.components()) out += "\t" + detail::fmt_double(p);
    out += "\n";
  }
  std::vector<Diagnostic> diags = o.diagnostics;
  std::sort(diags.begin(), diags.end(),
            [](const Diagnostic& a, const Diagnostic& b) { return a.ch < b.ch; });
  for (const auto& d : diags)
    out += "reject\t" + utf8_encode(std::u32string(1, d.ch)) + "\t" +
           to_string(d.reason) + "\n";
  return out;
}

inline CharacterOntology parse_ontology(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line() || line != "ideolex-ontology v1")
    throw parse_error("bad or unsupported ontology header", 1);

  std::optional<SentimentScheme> scheme;
  BuilderParams params;
  bool have_params = false;
  NegationSet negations;
  bool have_negations = false;
  std::map<char32_t, CharacterEntry> entries;
  std::vector<Diagnostic> diagnostics;

  auto single_char = [&](const std::string& field) -> char32_t {
    auto cs = utf8_decode(field);
    if (cs.size() != 1) throw parse_error("expected a single character", lineno);
    return cs[0];
  };

  while (next_line()) {
    if (line.empty()) continue;
    auto fields = detail::split(line, '\t');
    const std::string& tag = fields[0];
    if (tag == "scheme") {
      if (fields.size() < 3) throw parse_error("scheme needs >= 2 categories", lineno);
      scheme.emplace(std::vector<std::string>(fields.begin() + 1, fields.end()));
    } else if (tag == "params") {
      if (fields.size() != 4) throw parse_error("params needs T, LVB, UVB", lineno);
      params.threshold = static_cast<int>(detail::parse_double(fields[1], lineno));
      params.lvb = detail::parse_double(fields[2], lineno);
      params.uvb = detail::parse_double(fields[3], lineno);
      params.validate();
      have_params = true;
    } else if (tag == "negations") {
      for (std::size_t i = 1; i < fields.size(); ++i)
        negations.chars.insert(single_char(fields[i]));
      have_negations = true;
    } else if (tag == "entry") {
      if (!scheme) throw parse_error("entry before scheme", lineno);
      if (fields.size() != 4 + scheme->size())
        throw parse_error("entry field count mismatch", lineno);
      const char32_t ch = single_char(fields[1]);
      bool is_key;
      if (fields[2] == "key") is_key = true;
      else if (fields[2] == "plain") is_key = false;
      else throw parse_error("entry flag must be key|plain", lineno);
      const auto support = static_cast<std::size_t>(
          detail::parse_double(fields[3], lineno));
      std::vector<double> comps;
      for (std::size_t i = 4; i < fields.size(); ++i)
        comps.push_back(detail::parse_double(fields[i], lineno));
      CharacterEntry e{ch, SentimentVector(std::move(comps)), is_key, support};
      const std::string ch_text = fields[1];
      if (e.is_key && !e.vector.is_one_hot())
        throw parse_error("key entry '" + ch_text + "' is not one-hot", lineno);
      if (have_params && e.support < static_cast<std::size_t>(params.threshold))
        throw parse_error("entry '" + ch_text + "' support below threshold", lineno);
      if (negations.contains(e.ch))
        throw parse_error("negation character '" + ch_text + "' listed as entry",
                          lineno);
      if (!entries.emplace(e.ch, std::move(e)).second)
        throw parse_error("duplicate entry '" + ch_text + "'", lineno);
    } else if (tag == "reject") {
      if (fields.size() != 3) throw parse_error("reject needs char and reason", lineno);
      Diagnostic d;
      d.ch = single_char(fields[1]);
      if (fields[2] == "LowSupport") d.reason = RejectionReason::LowSupport;
      else if (fields[2] == "Nonsentiment") d.reason = RejectionReason::Nonsentiment;
      else if (fields[2] == "UndeterminedVector")
        d.reason = RejectionReason::UndeterminedVector;
      else throw parse_error("unknown rejection reason '" + fields[2] + "'", lineno);
      diagnostics.push_back(d);
    } else {
      throw parse_error("unknown record tag '" + tag + "'", lineno);
    }
  }
  if (!scheme) throw parse_error("missing scheme record");
  if (!have_params) throw parse_error("missing params record");
  if (!have_negations) throw parse_error("missing negations record");
  for (const auto& [c, e] : entries)
    if (e.vector.size() != scheme->size())
      throw parse_error("entry vector length does not match scheme");
  return CharacterOntology{std::move(*scheme), params, std::move(negations),
                           std::move(entries), std::move(diagnostics)};
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Write-then-rename so readers never observe a partial file.
inline void atomic_write_file(const std::filesystem::path& path,
                              std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace ideolex

#endif  // IDEOLEX_IO_HPP
