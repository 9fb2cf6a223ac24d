#pragma once

// Splitting of raw metadata author strings ("A. Smith, B. Jones and C. Wu")
// into individual names, and per-name normalization into keyname /
// forenames / suffix.

#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace arxivpipe {

struct AuthorName {
    std::string keyname;    // family name, never empty
    std::string forenames;  // may be empty
    std::string suffix;     // generational suffix ("Jr.", "III"), may be empty
    std::string raw;        // whitespace-collapsed source fragment
};

namespace detail {

inline const std::array<std::string_view, 8>& name_suffixes() {
    static const std::array<std::string_view, 8> s = {
        "Jr.", "Jr", "Sr.", "Sr", "I", "II", "III", "IV",
    };
    return s;
}

// Particles that stay attached to the family name ("van der Berg").
inline const std::array<std::string_view, 16>& name_particles() {
    static const std::array<std::string_view, 16> p = {
        "da", "das", "de",  "del", "della", "den", "der", "di",
        "dos", "du", "la",  "le",  "ten",   "ter", "van", "von",
    };
    return p;
}

inline bool is_suffix_token(std::string_view t) {
    for (auto s : name_suffixes())
        if (t == s) return true;
    return false;
}

inline bool is_particle_token(std::string_view t) {
    std::string low(t);
    for (char& c : low)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (auto p : name_particles())
        if (low == p) return true;
    return false;
}

inline std::string collapse_ws(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_space = true;  // also trims leading whitespace
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!in_space) out += ' ';
            in_space = true;
        } else {
            out += c;
            in_space = false;
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

inline std::vector<std::string> ws_tokens(std::string_view s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && s[i] == ' ') ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ') ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

// Removes parenthesized groups anywhere in the fragment (affiliations).
inline std::string strip_parenthesized(std::string_view s) {
    std::string out;
    int depth = 0;
    for (char c : s) {
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            if (depth > 0) --depth;
        } else if (depth == 0) {
            out += c;
        }
    }
    return out;
}

}  // namespace detail

// Normalizes one author fragment. The last whitespace token (after removing
// a trailing generational suffix) is the keyname; particles in front of it
// are kept with the keyname; parenthesized content is discarded.
inline AuthorName normalize_name(std::string_view fragment) {
    AuthorName name;
    name.raw = detail::collapse_ws(fragment);

    const std::string stripped =
        detail::collapse_ws(detail::strip_parenthesized(name.raw));
    std::vector<std::string> tokens = detail::ws_tokens(stripped);
    if (tokens.empty()) {
        // Fragment was empty or all-affiliation; keep the raw text so the
        // caller's non-empty-keyname invariant holds.
        name.keyname = name.raw;
        return name;
    }

    if (tokens.size() >= 2 && detail::is_suffix_token(tokens.back())) {
        name.suffix = tokens.back();
        tokens.pop_back();
    }

    size_t key_begin = tokens.size() - 1;
    while (key_begin > 0 && detail::is_particle_token(tokens[key_begin - 1]))
        --key_begin;

    for (size_t i = key_begin; i < tokens.size(); ++i) {
        if (i > key_begin) name.keyname += ' ';
        name.keyname += tokens[i];
    }
    for (size_t i = 0; i < key_begin; ++i) {
        if (i > 0) name.forenames += ' ';
        name.forenames += tokens[i];
    }
    return name;
}

// Splits an authors string on top-level commas and the conjunctions
// "and" / "And". Separators inside parentheses do not split. A fragment
// consisting solely of a generational suffix ("Smith, Jr.") attaches to
// the preceding name.
inline std::vector<AuthorName> split_authors(std::string_view authors) {
    std::vector<std::string> fragments;
    std::string current;
    int depth = 0;

    auto flush = [&]() {
        std::string c = detail::collapse_ws(current);
        if (!c.empty()) fragments.push_back(std::move(c));
        current.clear();
    };

    size_t i = 0;
    const size_t n = authors.size();
    while (i < n) {
        const char c = authors[i];
        if (c == '(') {
            ++depth;
            current += c;
            ++i;
        } else if (c == ')') {
            if (depth > 0) --depth;
            current += c;
            ++i;
        } else if (depth == 0 && c == ',') {
            flush();
            ++i;
        } else if (depth == 0 && (c == 'a' || c == 'A') && i + 3 <= n &&
                   authors.substr(i + 1, 2) == "nd" &&
                   (i == 0 || authors[i - 1] == ',' ||
                    std::isspace(static_cast<unsigned char>(authors[i - 1]))) &&
                   (i + 3 == n || authors[i + 3] == ',' ||
                    std::isspace(static_cast<unsigned char>(authors[i + 3])))) {
            flush();
            i += 3;
        } else {
            current += c;
            ++i;
        }
    }
    flush();

    std::vector<AuthorName> names;
    for (std::string& frag : fragments) {
        if (!names.empty() && detail::is_suffix_token(frag)) {
            names.back().suffix = frag;
            names.back().raw += ", " + frag;
            continue;
        }
        names.push_back(normalize_name(frag));
    }
    return names;
}

}  // namespace arxivpipe
