#include "reseg/text.h"

#include <memory>

#include <unicode/brkiter.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "reseg/error.h"
#include "reseg/io.h"

namespace reseg {

namespace {

enum class CharClass { Space, Punct, Word };

CharClass classify(UChar32 c) {
  if (u_isUWhiteSpace(c) || u_charType(c) == U_CONTROL_CHAR) return CharClass::Space;
  switch (u_charType(c)) {
    case U_DASH_PUNCTUATION:
    case U_START_PUNCTUATION:
    case U_END_PUNCTUATION:
    case U_CONNECTOR_PUNCTUATION:
    case U_OTHER_PUNCTUATION:
    case U_INITIAL_PUNCTUATION:
    case U_FINAL_PUNCTUATION:
    case U_MATH_SYMBOL:
    case U_CURRENCY_SYMBOL:
    case U_MODIFIER_SYMBOL:
    case U_OTHER_SYMBOL:
      return CharClass::Punct;
    default:
      return CharClass::Word;
  }
}

void check_icu(UErrorCode status, const char* what) {
  if (U_FAILURE(status)) throw Error(std::string(what) + ": " + u_errorName(status));
}

icu::UnicodeString normalize(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  check_icu(status, "NFC normalizer");
  icu::UnicodeString s =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s = nfc->normalize(s, status);
  s.foldCase(U_FOLD_CASE_DEFAULT);
  // Folding can produce decomposed sequences; recompose.
  s = nfc->normalize(s, status);
  check_icu(status, "normalization");
  return s;
}

std::string to_utf8(const icu::UnicodeString& s, int32_t start, int32_t end) {
  std::string out;
  s.tempSubStringBetween(start, end).toUTF8String(out);
  return out;
}

icu::BreakIterator& grapheme_iterator() {
  thread_local std::unique_ptr<icu::BreakIterator> it = [] {
    UErrorCode status = U_ZERO_ERROR;
    std::unique_ptr<icu::BreakIterator> bi(
        icu::BreakIterator::createCharacterInstance(icu::Locale::getRoot(), status));
    check_icu(status, "grapheme iterator");
    return bi;
  }();
  return *it;
}

void tokenize_words(const icu::UnicodeString& s, NormalizationMode mode, TokenList& out) {
  const int32_t n = s.length();
  int32_t i = 0;
  while (i < n) {
    const CharClass cls = classify(s.char32At(i));
    int32_t end = s.moveIndex32(i, 1);
    if (cls == CharClass::Space) {
      i = end;
      continue;
    }
    while (end < n && classify(s.char32At(end)) == cls) end = s.moveIndex32(end, 1);
    if (cls == CharClass::Word || mode == NormalizationMode::WP) out.push_back(to_utf8(s, i, end));
    i = end;
  }
}

void tokenize_chars(const icu::UnicodeString& s, NormalizationMode mode, TokenList& out) {
  icu::BreakIterator& bi = grapheme_iterator();
  bi.setText(s);
  int32_t start = bi.first();
  for (int32_t end = bi.next(); end != icu::BreakIterator::DONE; start = end, end = bi.next()) {
    const CharClass cls = classify(s.char32At(start));
    if (cls == CharClass::Space) continue;
    if (cls == CharClass::Punct && mode == NormalizationMode::NP) continue;
    out.push_back(to_utf8(s, start, end));
  }
}

}  // namespace

NormalizationMode parse_mode(std::string_view name) {
  if (name == "np" || name == "NP") return NormalizationMode::NP;
  if (name == "wp" || name == "WP") return NormalizationMode::WP;
  throw DataError("unknown normalization mode: " + std::string(name));
}

std::string_view mode_name(NormalizationMode mode) {
  return mode == NormalizationMode::NP ? "np" : "wp";
}

std::size_t SegmentedText::token_count() const {
  std::size_t n = 0;
  for (const auto& seg : segments) n += seg.size();
  return n;
}

TokenList SegmentedText::flatten() const {
  TokenList out;
  out.reserve(token_count());
  for (const auto& seg : segments) out.insert(out.end(), seg.begin(), seg.end());
  return out;
}

std::vector<std::size_t> segment_lengths(const SegmentedText& doc) {
  std::vector<std::size_t> lens;
  lens.reserve(doc.size());
  for (const auto& seg : doc.segments) lens.push_back(seg.size());
  return lens;
}

SegmentedText split_at(const TokenList& stream, const std::vector<std::size_t>& ends) {
  SegmentedText out;
  out.segments.reserve(ends.size() + 1);
  std::size_t begin = 0;
  for (std::size_t end : ends) {
    if (end < begin || end > stream.size()) throw DataError("split offsets out of order or bounds");
    out.segments.emplace_back(stream.begin() + static_cast<std::ptrdiff_t>(begin),
                              stream.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  out.segments.emplace_back(stream.begin() + static_cast<std::ptrdiff_t>(begin), stream.end());
  return out;
}

std::size_t find_invalid_utf8(std::string_view text) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int64_t n = static_cast<int64_t>(text.size());
  int64_t i = 0;
  while (i < n) {
    const int64_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, n, c);
    if (c < 0) return static_cast<std::size_t>(at);
  }
  return std::string_view::npos;
}

TokenList tokenize(std::string_view text, NormalizationMode mode, bool char_level) {
  if (std::size_t bad = find_invalid_utf8(text); bad != std::string_view::npos)
    throw DecodeError("invalid UTF-8 at byte offset " + std::to_string(bad), bad);
  TokenList out;
  if (text.empty()) return out;
  const icu::UnicodeString s = normalize(text);
  if (char_level)
    tokenize_chars(s, mode, out);
  else
    tokenize_words(s, mode, out);
  return out;
}

TokenList split_whitespace(std::string_view text) {
  if (std::size_t bad = find_invalid_utf8(text); bad != std::string_view::npos)
    throw DecodeError("invalid UTF-8 at byte offset " + std::to_string(bad), bad);
  const auto* bytes = reinterpret_cast<const uint8_t*>(text.data());
  const int64_t n = static_cast<int64_t>(text.size());
  TokenList out;
  int64_t i = 0, start = -1;
  while (i < n) {
    const int64_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, n, c);
    if (classify(c) == CharClass::Space) {
      if (start >= 0) out.emplace_back(text.substr(start, at - start));
      start = -1;
    } else if (start < 0) {
      start = at;
    }
  }
  if (start >= 0) out.emplace_back(text.substr(start));
  return out;
}

bool is_punctuation_token(std::string_view token) {
  if (token.empty()) return false;
  const auto* bytes = reinterpret_cast<const uint8_t*>(token.data());
  const int64_t n = static_cast<int64_t>(token.size());
  int64_t i = 0;
  while (i < n) {
    UChar32 c;
    U8_NEXT(bytes, i, n, c);
    if (c < 0 || classify(c) != CharClass::Punct) return false;
  }
  return true;
}

SegmentedText parse_segmented(std::string_view contents, NormalizationMode mode, bool char_level,
                              const std::string& origin) {
  if (std::size_t bad = find_invalid_utf8(contents); bad != std::string_view::npos)
    throw DecodeError(origin + ": invalid UTF-8 at byte offset " + std::to_string(bad), bad);
  if (contents.starts_with("\xEF\xBB\xBF")) contents.remove_prefix(3);

  SegmentedText doc;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t nl = contents.find('\n', pos);
    if (nl == std::string_view::npos) nl = contents.size();
    doc.segments.push_back(tokenize(contents.substr(pos, nl - pos), mode, char_level));
    pos = nl + 1;
  }
  return doc;
}

SegmentedText read_segmented(const std::string& path, NormalizationMode mode, bool char_level) {
  return parse_segmented(read_file(path), mode, char_level, path);
}

SegmentedText read_segmented_raw(const std::string& path) {
  const std::string contents = read_file(path);
  if (std::size_t bad = find_invalid_utf8(contents); bad != std::string_view::npos)
    throw DecodeError(path + ": invalid UTF-8 at byte offset " + std::to_string(bad), bad);
  std::string_view rest(contents);
  if (rest.starts_with("\xEF\xBB\xBF")) rest.remove_prefix(3);
  SegmentedText doc;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    std::size_t nl = rest.find('\n', pos);
    if (nl == std::string_view::npos) nl = rest.size();
    doc.segments.push_back(split_whitespace(rest.substr(pos, nl - pos)));
    pos = nl + 1;
  }
  return doc;
}

TokenList read_stream(const std::string& path, NormalizationMode mode, bool char_level) {
  return read_segmented(path, mode, char_level).flatten();
}

std::string join_tokens(const TokenList& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

std::string format_segmented(const SegmentedText& doc) {
  std::string out;
  for (const auto& seg : doc.segments) {
    out += join_tokens(seg);
    out += '\n';
  }
  return out;
}

}  // namespace reseg
