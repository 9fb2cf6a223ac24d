#pragma once

// arXiv identifier parsing, canonicalization and free-text scanning.
//
// Two generations of identifiers exist, split at April 2007:
//   old scheme:  archive[.subject-class]/yymmnnn   e.g. hep-th/9901001
//   new scheme:  yymm.nnnn (through 1412) or yymm.nnnnn (from 1501)
// Either form may carry a version suffix "vK".

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arxivpipe/errors.hpp"

namespace arxivpipe {

enum class IdScheme { Old, New };

enum class IdErrorKind {
    InvalidFormat,
    InvalidMonth,
    InvalidNumberWidth,
    UnknownArchive,
    YearOutOfRange,
};

class ArxivIdError : public ParseError {
public:
    ArxivIdError(IdErrorKind kind, const std::string& msg)
        : ParseError(msg), kind_(kind) {}

    IdErrorKind kind() const { return kind_; }

private:
    IdErrorKind kind_;
};

struct ArxivId {
    IdScheme scheme = IdScheme::New;
    std::string archive;        // old scheme only, lower-cased, e.g. "hep-th"
    std::string subject_class;  // old scheme only, lower-cased, may be empty
    int yymm = 0;               // year-month code, e.g. 704 renders as "0704"
    std::string number;         // zero-padded digits: 3 (old) / 4 or 5 (new)
    int version = 0;            // 0 means no version suffix

    int year() const {
        const int yy = yymm / 100;
        if (scheme == IdScheme::Old) return yy >= 91 ? 1900 + yy : 2000 + yy;
        return 2000 + yy;
    }
    int month() const { return yymm % 100; }

    bool operator==(const ArxivId&) const = default;
};

struct IdParseOptions {
    // Accept old-scheme archive prefixes outside the historical allow-list.
    bool lax_archives = false;
    // Reject identifiers dated after this year-month. The service started
    // 1991-08; the lower bound is fixed.
    int max_year = 2030;
    int max_month = 12;
};

namespace detail {

// Archives that existed under the old identifier scheme (pre 2007-04).
inline const std::array<std::string_view, 34>& old_archives() {
    static const std::array<std::string_view, 34> names = {
        "acc-phys", "adap-org", "alg-geom", "ao-sci",   "astro-ph", "atom-ph",
        "bayes-an", "chao-dyn", "chem-ph",  "cmp-lg",   "comp-gas", "cond-mat",
        "cs",       "dg-ga",    "funct-an", "gr-qc",    "hep-ex",   "hep-lat",
        "hep-ph",   "hep-th",   "math",     "math-ph",  "mtrl-th",  "nlin",
        "nucl-ex",  "nucl-th",  "patt-sol", "physics",  "plasm-ph", "q-alg",
        "q-bio",    "quant-ph", "solv-int", "supr-con",
    };
    return names;
}

inline bool is_known_archive(std::string_view name) {
    const auto& a = old_archives();
    return std::find(a.begin(), a.end(), name) != a.end();
}

inline bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
inline bool ascii_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool ascii_alnum(char c) { return ascii_digit(c) || ascii_alpha(c); }
inline char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

inline std::string lowered(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = ascii_lower(c);
    return out;
}

// Months since year 0 for ordering across the century wrap.
inline int absolute_month(const ArxivId& id) {
    return id.year() * 12 + id.month() - 1;
}

inline int absolute_month(int year, int month) { return year * 12 + month - 1; }

struct ParseOutcome {
    std::optional<ArxivId> id;
    IdErrorKind error = IdErrorKind::InvalidFormat;
    std::string message;
};

// Semantic validation shared by parse() and the scanner.
inline bool validate(ArxivId& id, const IdParseOptions& opt, ParseOutcome& out) {
    const int mm = id.month();
    if (mm < 1 || mm > 12) {
        out.error = IdErrorKind::InvalidMonth;
        out.message = "invalid month in year-month code";
        return false;
    }
    if (id.scheme == IdScheme::Old) {
        if (!opt.lax_archives && !is_known_archive(id.archive)) {
            out.error = IdErrorKind::UnknownArchive;
            out.message = "unknown archive name '" + id.archive + "'";
            return false;
        }
        // Old scheme ran 1991-08 through 2007-03.
        if (absolute_month(id) < absolute_month(1991, 8) ||
            absolute_month(id) > absolute_month(2007, 3)) {
            out.error = IdErrorKind::YearOutOfRange;
            out.message = "old-scheme date outside 1991-08..2007-03";
            return false;
        }
    } else {
        // New scheme began 2007-04.
        if (absolute_month(id) < absolute_month(2007, 4)) {
            out.error = IdErrorKind::YearOutOfRange;
            out.message = "new-scheme date before 2007-04";
            return false;
        }
        if (absolute_month(id) > absolute_month(opt.max_year, opt.max_month)) {
            out.error = IdErrorKind::YearOutOfRange;
            out.message = "date beyond configured horizon";
            return false;
        }
        const size_t want = id.yymm <= 1412 ? 4 : 5;
        if (id.number.size() != want) {
            out.error = IdErrorKind::InvalidNumberWidth;
            out.message = "new-scheme number must have " +
                          std::to_string(want) + " digits for this year-month";
            return false;
        }
    }
    out.id = id;
    return true;
}

// Matches one candidate starting at s[pos]. On success fills `out.id` and
// sets `end` one past the match; the caller handles word boundaries.
inline bool match_at(std::string_view s, size_t pos, const IdParseOptions& opt,
                     ParseOutcome& out, size_t& end) {
    const size_t n = s.size();
    size_t i = pos;
    ArxivId id;

    if (ascii_digit(s[i])) {
        // New scheme: yymm.nnnn[n]
        size_t run = 0;
        while (i + run < n && ascii_digit(s[i + run])) ++run;
        if (run != 4 || i + 4 >= n || s[i + 4] != '.') {
            out.message = "expected 4-digit year-month code followed by '.'";
            return false;
        }
        id.scheme = IdScheme::New;
        id.yymm = (s[i] - '0') * 1000 + (s[i + 1] - '0') * 100 +
                  (s[i + 2] - '0') * 10 + (s[i + 3] - '0');
        i += 5;
        size_t digits = 0;
        while (i + digits < n && ascii_digit(s[i + digits])) ++digits;
        if (digits < 4 || digits > 5) {
            out.error = digits == 0 ? IdErrorKind::InvalidFormat
                                    : IdErrorKind::InvalidNumberWidth;
            out.message = "sequence number must have 4 or 5 digits";
            return false;
        }
        id.number = std::string(s.substr(i, digits));
        i += digits;
    } else {
        // Old scheme: archive[.subject-class]/yymmnnn
        size_t j = i;
        while (j < n && (ascii_alpha(s[j]) || s[j] == '-')) ++j;
        if (j == i || s[j - 1] == '-' || s[i] == '-') {
            out.message = "expected archive name";
            return false;
        }
        id.scheme = IdScheme::Old;
        id.archive = lowered(s.substr(i, j - i));
        i = j;
        if (i < n && s[i] == '.') {
            size_t k = i + 1;
            while (k < n && (ascii_alpha(s[k]) || s[k] == '-')) ++k;
            if (k == i + 1 || s[k - 1] == '-') {
                out.message = "expected subject class after '.'";
                return false;
            }
            id.subject_class = lowered(s.substr(i + 1, k - i - 1));
            i = k;
        }
        if (i >= n || s[i] != '/') {
            out.message = "expected '/' before the 7-digit block";
            return false;
        }
        ++i;
        size_t digits = 0;
        while (i + digits < n && ascii_digit(s[i + digits])) ++digits;
        if (digits != 7) {
            out.message = "expected a 7-digit year-month-number block";
            return false;
        }
        id.yymm = (s[i] - '0') * 1000 + (s[i + 1] - '0') * 100 +
                  (s[i + 2] - '0') * 10 + (s[i + 3] - '0');
        id.number = std::string(s.substr(i + 4, 3));
        i += 7;
    }

    // Optional version suffix.
    if (i < n && (s[i] == 'v' || s[i] == 'V') && i + 1 < n &&
        ascii_digit(s[i + 1])) {
        size_t digits = 0;
        while (i + 1 + digits < n && ascii_digit(s[i + 1 + digits])) ++digits;
        if (digits <= 9) {
            long v = 0;
            for (size_t k = 0; k < digits; ++k) v = v * 10 + (s[i + 1 + k] - '0');
            if (v >= 1) {
                id.version = static_cast<int>(v);
                i += 1 + digits;
            }
        }
    }

    end = i;
    return validate(id, opt, out);
}

}  // namespace detail

// Canonical rendering. parse(canonical(x)) == x.
inline std::string canonical(const ArxivId& id, bool with_version = true) {
    std::string out;
    char yymm[5];
    std::snprintf(yymm, sizeof yymm, "%04d", id.yymm);
    if (id.scheme == IdScheme::Old) {
        out = id.archive;
        if (!id.subject_class.empty()) {
            out += '.';
            out += id.subject_class;
        }
        out += '/';
        out += yymm;
        out += id.number;
    } else {
        out = yymm;
        out += '.';
        out += id.number;
    }
    if (with_version && id.version > 0) {
        out += 'v';
        out += std::to_string(id.version);
    }
    return out;
}

// Parses a complete identifier string. Accepts an optional "arXiv:" prefix
// and surrounding whitespace; archive names are case-insensitive.
inline std::optional<ArxivId> try_parse_id(std::string_view s,
                                           const IdParseOptions& opt = {}) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    s = s.substr(b, e - b);
    if (s.size() > 6) {
        const std::string head = detail::lowered(s.substr(0, 6));
        if (head == "arxiv:") s.remove_prefix(6);
    }
    if (s.empty()) return std::nullopt;

    detail::ParseOutcome out;
    size_t end = 0;
    if (!detail::match_at(s, 0, opt, out, end) || end != s.size())
        return std::nullopt;
    return out.id;
}

inline ArxivId parse_id(std::string_view s, const IdParseOptions& opt = {}) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string_view t = s.substr(b, e - b);
    if (t.size() > 6 && detail::lowered(t.substr(0, 6)) == "arxiv:")
        t.remove_prefix(6);
    if (t.empty())
        throw ArxivIdError(IdErrorKind::InvalidFormat, "empty identifier");

    detail::ParseOutcome out;
    size_t end = 0;
    const bool matched = detail::match_at(t, 0, opt, out, end);
    if (matched && end == t.size()) return *out.id;
    if (matched)
        throw ArxivIdError(IdErrorKind::InvalidFormat,
                           "trailing characters after identifier in '" +
                               std::string(s) + "'");
    throw ArxivIdError(out.error, out.message + " in '" + std::string(s) + "'");
}

struct IdMatch {
    ArxivId id;
    size_t offset = 0;  // byte offset of the first byte of the match
    size_t length = 0;
};

// Scans arbitrary UTF-8 text for identifiers. A candidate immediately
// preceded or followed by an ASCII alphanumeric byte is rejected, so ids
// embedded in longer digit or letter runs never match. Duplicates are
// kept; offsets are strictly increasing.
inline std::vector<IdMatch> scan_text(std::string_view text,
                                      const IdParseOptions& opt = {}) {
    std::vector<IdMatch> matches;
    const size_t n = text.size();
    size_t pos = 0;
    while (pos < n) {
        const char c = text[pos];
        if (!detail::ascii_alnum(c)) {
            ++pos;
            continue;
        }
        if (pos > 0 && detail::ascii_alnum(text[pos - 1])) {
            // Interior of a run; skip to its end.
            while (pos < n && detail::ascii_alnum(text[pos])) ++pos;
            continue;
        }
        detail::ParseOutcome out;
        size_t end = 0;
        if (detail::match_at(text, pos, opt, out, end) &&
            (end >= n || !detail::ascii_alnum(text[end]))) {
            matches.push_back({*out.id, pos, end - pos});
            pos = end;
        } else {
            ++pos;
        }
    }
    return matches;
}

}  // namespace arxivpipe
