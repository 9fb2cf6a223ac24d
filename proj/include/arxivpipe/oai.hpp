#pragma once

// OAI-PMH ListRecords harvester. The HTTP layer is abstract so the loop is
// testable against canned pages; the record payload parser is pluggable,
// with the arXivRaw element layout as the shipped default.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "arxivpipe/errors.hpp"
#include "arxivpipe/metadata.hpp"
#include "arxivpipe/xml.hpp"

namespace arxivpipe {

struct HttpResponse {
    int status = 0;  // 0 = transport failure before any status line
    std::string body;
    std::vector<std::pair<std::string, std::string>> headers;

    // Case-insensitive header lookup; empty string when absent.
    std::string header(std::string_view key) const {
        auto eq = [](char a, char b) {
            return std::tolower(static_cast<unsigned char>(a)) ==
                   std::tolower(static_cast<unsigned char>(b));
        };
        for (const auto& [k, v] : headers) {
            if (k.size() == key.size() &&
                std::equal(k.begin(), k.end(), key.begin(), eq))
                return v;
        }
        return {};
    }
};

class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    // May throw on connection failure; such failures are retried.
    virtual HttpResponse get(const std::string& url) = 0;
};

struct HarvestConfig {
    std::string endpoint_url;
    std::string metadata_prefix = "arXivRaw";
    std::string from_date;   // optional, YYYY-MM-DD
    std::string until_date;  // optional
    std::string set_spec;    // optional
    // Politeness delay between successive requests. The data sources this
    // client targets rate-limit aggressively, hence the conservative default.
    std::chrono::milliseconds request_delay{3000};
    int max_retries = 3;
};

struct HarvestStats {
    size_t records = 0;
    size_t deleted_skipped = 0;
    size_t requests = 0;
};

using RecordSink = std::function<void(ArticleMetadata&&)>;
using Sleeper = std::function<void(std::chrono::milliseconds)>;

// position is the 0-based index of the record within its page, used in
// error messages.
using RecordParser =
    std::function<ArticleMetadata(const XmlNode& record, size_t position)>;

namespace detail {

inline std::string url_encode(std::string_view s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += hex[c >> 4];
            out += hex[c & 15];
        }
    }
    return out;
}

inline std::string trimmed_collapsed(std::string_view s) {
    std::string out;
    bool in_space = true;
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

inline void split_categories(const std::string& raw,
                             std::vector<std::string>& out) {
    size_t i = 0;
    while (i < raw.size()) {
        while (i < raw.size() && raw[i] == ' ') ++i;
        size_t j = i;
        while (j < raw.size() && raw[j] != ' ') ++j;
        if (j > i) out.emplace_back(raw.substr(i, j - i));
        i = j;
    }
}

}  // namespace detail

// Parses one <record> element in the arXivRaw element layout. Field
// element names match the archive keys; <version version="vN"> children
// carry the version labels in document order.
inline ArticleMetadata parse_arxiv_raw_record(const XmlNode& record) {
    const XmlNode* metadata = record.child("metadata");
    if (metadata == nullptr)
        throw ParseError("record has no <metadata> element");
    // The payload root is the single element below <metadata>.
    if (metadata->children.size() != 1)
        throw ParseError("expected exactly one metadata payload element");
    const XmlNode& payload = metadata->children.front();

    ArticleMetadata m;
    std::string categories_raw;
    for (const XmlNode& field : payload.children) {
        const std::string_view name = xml_local_name(field.name);
        const std::string value = detail::trimmed_collapsed(field.text);
        if (name == "id") m.id = value;
        else if (name == "submitter") m.submitter = value;
        else if (name == "authors") m.authors = value;
        else if (name == "title") m.title = value;
        else if (name == "comments") m.comments = value;
        else if (name == "journal-ref") m.journal_ref = value;
        else if (name == "doi") m.doi = value;
        else if (name == "report-no") m.report_no = value;
        else if (name == "abstract") m.abstract = value;
        else if (name == "categories") categories_raw = value;
        else if (name == "version") {
            const std::string* label = field.attr("version");
            if (label == nullptr || label->empty())
                throw ParseError("version element without version attribute");
            m.versions.push_back(*label);
        }
    }
    detail::split_categories(categories_raw, m.categories);

    auto require = [](bool ok, const char* field) {
        if (!ok) throw ParseError(std::string("missing mandatory field: ") + field);
    };
    require(!m.id.empty(), "id");
    require(!m.authors.empty(), "authors");
    require(!m.abstract.empty(), "abstract");
    require(!m.categories.empty(), "categories");
    require(!m.versions.empty(), "versions");
    return m;
}

// Standalone entry point: one OAI <record> payload as an XML string.
inline ArticleMetadata parse_record(const std::string& record_xml) {
    return parse_arxiv_raw_record(xml_parse(record_xml));
}

inline ArticleMetadata default_record_parser(const XmlNode& record,
                                             size_t /*position*/) {
    return parse_arxiv_raw_record(record);
}

namespace detail {

inline bool record_is_deleted(const XmlNode& record) {
    const XmlNode* header = record.child("header");
    if (header == nullptr) return false;
    const std::string* status = header->attr("status");
    return status != nullptr && *status == "deleted";
}

inline std::string first_line(std::string_view body, size_t limit = 160) {
    const size_t nl = body.find('\n');
    std::string_view head = body.substr(0, std::min(nl, limit));
    return std::string(head);
}

}  // namespace detail

// Runs a full ListRecords harvest, following resumption tokens until the
// endpoint stops returning one. Records are handed to `sink` in response
// order; deleted-record tombstones are skipped with a warning.
//
// Retryable failures (connection errors, HTTP 5xx and 429) back off
// exponentially, honoring a numeric Retry-After header when present, up to
// max_retries per request. Anything else is a HarvestError.
inline HarvestStats harvest(
    const HarvestConfig& config, HttpTransport& transport,
    const RecordSink& sink,
    const RecordParser& parser = default_record_parser,
    const Sleeper& sleeper =
        [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); },
    std::ostream* log = &std::cerr) {
    if (config.endpoint_url.empty())
        throw ConfigError("harvest endpoint URL is empty");
    if (config.max_retries < 0 || config.request_delay.count() < 0)
        throw ConfigError("request_delay and max_retries must be non-negative");

    std::string url = config.endpoint_url + "?verb=ListRecords&metadataPrefix=" +
                      detail::url_encode(config.metadata_prefix);
    if (!config.from_date.empty())
        url += "&from=" + detail::url_encode(config.from_date);
    if (!config.until_date.empty())
        url += "&until=" + detail::url_encode(config.until_date);
    if (!config.set_spec.empty())
        url += "&set=" + detail::url_encode(config.set_spec);

    HarvestStats stats;
    for (;;) {
        if (stats.requests > 0 && config.request_delay.count() > 0)
            sleeper(config.request_delay);

        // One request with retries.
        HttpResponse resp;
        int attempt = 0;
        for (;;) {
            ++stats.requests;
            bool transport_error = false;
            std::string transport_msg;
            try {
                resp = transport.get(url);
            } catch (const std::exception& e) {
                transport_error = true;
                transport_msg = e.what();
            }
            if (!transport_error && resp.status == 200) break;

            const int status = transport_error ? 0 : resp.status;
            const bool retryable =
                transport_error || status >= 500 || status == 429 || status == 0;
            if (!retryable)
                throw HarvestError("HTTP " + std::to_string(status) + " from " + url,
                                   status);
            if (attempt >= config.max_retries)
                throw HarvestError(
                    transport_error
                        ? "transport failure after retries: " + transport_msg
                        : "HTTP " + std::to_string(status) + " after retries",
                    status);

            std::chrono::milliseconds backoff{1000L << std::min(attempt, 6)};
            const std::string retry_after =
                transport_error ? std::string{} : resp.header("Retry-After");
            if (!retry_after.empty()) {
                char* end = nullptr;
                const long secs = std::strtol(retry_after.c_str(), &end, 10);
                if (end != retry_after.c_str() && secs >= 0)
                    backoff = std::chrono::seconds(secs);
            }
            if (log)
                *log << "[warn] request failed (status " << status << "), retry "
                     << attempt + 1 << "/" << config.max_retries << " in "
                     << backoff.count() << " ms\n";
            sleeper(backoff);
            ++attempt;
        }

        XmlNode root;
        try {
            root = xml_parse(resp.body);
        } catch (const ParseError& e) {
            throw ProtocolError(std::string("unparseable OAI response: ") +
                                e.what() + " [" + detail::first_line(resp.body) +
                                "]");
        }
        if (xml_local_name(root.name) != "OAI-PMH")
            throw ProtocolError("response root is <" + root.name +
                                ">, expected <OAI-PMH>");

        if (const XmlNode* err = root.child("error")) {
            const std::string* code = err->attr("code");
            const std::string code_str = code ? *code : "(none)";
            if (code_str == "noRecordsMatch") return stats;  // empty window
            throw ProtocolError("OAI error code " + code_str + ": " +
                                detail::trimmed_collapsed(err->text));
        }

        const XmlNode* list = root.child("ListRecords");
        if (list == nullptr)
            throw ProtocolError("response has no <ListRecords> element [" +
                                detail::first_line(resp.body) + "]");

        size_t position = 0;
        for (const XmlNode* record : list->children_named("record")) {
            if (detail::record_is_deleted(*record)) {
                ++stats.deleted_skipped;
                if (log) {
                    const XmlNode* header = record->child("header");
                    const XmlNode* ident =
                        header ? header->child("identifier") : nullptr;
                    *log << "[warn] skipping deleted record "
                         << (ident ? ident->text : std::to_string(position)) << "\n";
                }
                ++position;
                continue;
            }
            try {
                sink(parser(*record, position));
            } catch (const ParseError& e) {
                throw ProtocolError("bad record at position " +
                                    std::to_string(position) + ": " + e.what());
            }
            ++stats.records;
            ++position;
        }

        const XmlNode* token = list->child("resumptionToken");
        if (token == nullptr) return stats;
        const std::string value = detail::trimmed_collapsed(token->text);
        if (value.empty()) return stats;
        url = config.endpoint_url +
              "?verb=ListRecords&resumptionToken=" + detail::url_encode(value);
    }
}

}  // namespace arxivpipe
