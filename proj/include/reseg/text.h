#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace reseg {

using Token = std::string;
using TokenList = std::vector<Token>;

// How punctuation is treated after case folding.
//   NP: punctuation removed entirely.
//   WP: punctuation runs detached into standalone tokens.
enum class NormalizationMode { NP, WP };

NormalizationMode parse_mode(std::string_view name);
std::string_view mode_name(NormalizationMode mode);

// An ordered list of token segments in one language. Segments may be empty;
// flattening yields the token stream, which every re-segmentation preserves.
struct SegmentedText {
  std::vector<TokenList> segments;
  std::string lang;

  std::size_t size() const { return segments.size(); }
  std::size_t token_count() const;
  TokenList flatten() const;

  friend bool operator==(const SegmentedText& a, const SegmentedText& b) {
    return a.segments == b.segments;
  }
};

// Segment lengths of `doc`, in order.
std::vector<std::size_t> segment_lengths(const SegmentedText& doc);

// Cuts `stream` at the given cumulative end offsets. The last segment runs to
// the end of the stream; `ends` must be non-decreasing and within bounds.
SegmentedText split_at(const TokenList& stream, const std::vector<std::size_t>& ends);

// NFC, full case folding, whitespace split and punctuation handling per
// `mode`. With `char_level`, every non-space grapheme becomes a token.
// Throws DecodeError on malformed UTF-8.
TokenList tokenize(std::string_view text, NormalizationMode mode, bool char_level = false);

// Splits on Unicode whitespace only: no normalization, case is kept.
TokenList split_whitespace(std::string_view text);

// One segment per line via split_whitespace (original text preserved).
SegmentedText read_segmented_raw(const std::string& path);

// True if every code point of `token` is Unicode punctuation (P*) or a
// symbol (S*).
bool is_punctuation_token(std::string_view token);

// Byte offset of the first malformed UTF-8 sequence, or npos.
std::size_t find_invalid_utf8(std::string_view text);

// One segment per LF-terminated line; blank lines become empty segments.
SegmentedText read_segmented(const std::string& path, NormalizationMode mode,
                             bool char_level = false);

// Same as read_segmented, on in-memory file contents.
SegmentedText parse_segmented(std::string_view contents, NormalizationMode mode,
                              bool char_level = false, const std::string& origin = "<memory>");

// Reads a whole file as one token stream (line breaks are ignored).
TokenList read_stream(const std::string& path, NormalizationMode mode, bool char_level = false);

// Tokens joined by single spaces, one segment per line, LF terminated.
std::string format_segmented(const SegmentedText& doc);

std::string join_tokens(const TokenList& tokens);

}  // namespace reseg
