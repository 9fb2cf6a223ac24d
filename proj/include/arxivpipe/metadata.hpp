#pragma once

// Harvested article metadata records and their line-delimited JSON archive.
//
// Archive layout: one JSON object per line with keys
//   id, submitter, authors, title, comments, journal-ref, doi, report-no,
//   abstract, categories (array), versions (array)
// Optional fields that are absent or empty are omitted from the object.

#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "arxivpipe/arxiv_id.hpp"
#include "arxivpipe/errors.hpp"

namespace arxivpipe {

struct ArticleMetadata {
    std::string id;           // canonical identifier
    std::string submitter;    // optional; empty means absent
    std::string authors;      // raw unsplit author string
    std::string title;        // may be empty
    std::string comments;     // optional
    std::string journal_ref;  // optional
    std::string doi;          // optional
    std::string report_no;    // optional
    std::string abstract;
    std::vector<std::string> categories;  // non-empty; [0] is primary
    std::vector<std::string> versions;    // non-empty, e.g. {"v1","v2"}

    const std::string& primary_category() const { return categories.front(); }

    bool operator==(const ArticleMetadata&) const = default;
};

// Throws ParseError if a mandatory field is missing or the id is invalid.
inline void validate(const ArticleMetadata& m,
                     const IdParseOptions& opt = {}) {
    auto require = [](bool ok, const char* field) {
        if (!ok) throw ParseError(std::string("missing mandatory field: ") + field);
    };
    require(!m.id.empty(), "id");
    require(!m.authors.empty(), "authors");
    require(!m.abstract.empty(), "abstract");
    require(!m.categories.empty(), "categories");
    require(!m.versions.empty(), "versions");
    parse_id(m.id, opt);  // throws if not a valid identifier
}

inline nlohmann::ordered_json to_archive_json(const ArticleMetadata& m) {
    nlohmann::ordered_json j;
    j["id"] = m.id;
    if (!m.submitter.empty()) j["submitter"] = m.submitter;
    j["authors"] = m.authors;
    j["title"] = m.title;
    if (!m.comments.empty()) j["comments"] = m.comments;
    if (!m.journal_ref.empty()) j["journal-ref"] = m.journal_ref;
    if (!m.doi.empty()) j["doi"] = m.doi;
    if (!m.report_no.empty()) j["report-no"] = m.report_no;
    j["abstract"] = m.abstract;
    j["categories"] = m.categories;
    j["versions"] = m.versions;
    return j;
}

inline ArticleMetadata from_archive_json(const nlohmann::json& j) {
    ArticleMetadata m;
    auto get_str = [&](const char* key, std::string& out, bool mandatory) {
        const auto it = j.find(key);
        if (it == j.end() || it->is_null()) {
            if (mandatory)
                throw ParseError(std::string("missing mandatory field: ") + key);
            return;
        }
        if (!it->is_string())
            throw ParseError(std::string("field is not a string: ") + key);
        out = it->get<std::string>();
    };
    get_str("id", m.id, true);
    get_str("submitter", m.submitter, false);
    get_str("authors", m.authors, true);
    get_str("title", m.title, false);
    get_str("comments", m.comments, false);
    get_str("journal-ref", m.journal_ref, false);
    get_str("doi", m.doi, false);
    get_str("report-no", m.report_no, false);
    get_str("abstract", m.abstract, true);

    auto get_list = [&](const char* key, std::vector<std::string>& out) {
        const auto it = j.find(key);
        if (it == j.end() || !it->is_array() || it->empty())
            throw ParseError(std::string("missing mandatory field: ") + key);
        for (const auto& e : *it) out.push_back(e.get<std::string>());
    };
    get_list("categories", m.categories);
    get_list("versions", m.versions);
    return m;
}

// Appends records to `out`, one JSON object per line. Returns the count.
template <typename Range>
size_t write_archive_stream(const Range& records, std::ostream& out) {
    size_t count = 0;
    for (const ArticleMetadata& m : records) {
        out << to_archive_json(m).dump() << '\n';
        ++count;
    }
    if (!out) throw IoError("failed writing archive stream");
    return count;
}

template <typename Range>
size_t write_archive(const Range& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open archive for writing: " + path);
    return write_archive_stream(records, out);
}

// Streams an archive record by record; malformed lines report their
// 1-based line number.
inline size_t for_each_record(
    const std::string& path,
    const std::function<void(ArticleMetadata&&)>& sink) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open archive for reading: " + path);
    std::string line;
    size_t line_no = 0, count = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw ParseError("invalid JSON in archive", static_cast<long>(line_no));
        try {
            sink(from_archive_json(j));
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad record: ") + e.what(),
                             static_cast<long>(line_no));
        }
        ++count;
    }
    return count;
}

inline std::vector<ArticleMetadata> read_archive(const std::string& path) {
    std::vector<ArticleMetadata> records;
    for_each_record(path, [&](ArticleMetadata&& m) {
        records.push_back(std::move(m));
    });
    return records;
}

struct CountsReport {
    size_t total = 0;
    std::map<std::string, size_t> per_field;
};

// Counts records whose field is present and non-empty.
template <typename Range>
CountsReport field_counts(const Range& records) {
    CountsReport rep;
    static const char* fields[] = {"id",          "submitter", "authors",
                                   "title",       "comments",  "journal-ref",
                                   "doi",         "report-no", "abstract",
                                   "categories",  "versions"};
    for (const char* f : fields) rep.per_field[f] = 0;
    auto bump = [&](const char* f, bool populated) {
        if (populated) ++rep.per_field[f];
    };
    for (const ArticleMetadata& m : records) {
        ++rep.total;
        bump("id", !m.id.empty());
        bump("submitter", !m.submitter.empty());
        bump("authors", !m.authors.empty());
        bump("title", !m.title.empty());
        bump("comments", !m.comments.empty());
        bump("journal-ref", !m.journal_ref.empty());
        bump("doi", !m.doi.empty());
        bump("report-no", !m.report_no.empty());
        bump("abstract", !m.abstract.empty());
        bump("categories", !m.categories.empty());
        bump("versions", !m.versions.empty());
    }
    return rep;
}

}  // namespace arxivpipe
