#pragma once

// Minimal non-validating XML reader, sufficient for OAI-PMH envelopes:
// elements, attributes, character data with entity references, CDATA,
// comments and processing instructions. No DTD handling beyond skipping
// a <!DOCTYPE ...> declaration.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "arxivpipe/errors.hpp"

namespace arxivpipe {

struct XmlNode {
    std::string name;  // tag name as written, namespace prefix included
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlNode> children;
    std::string text;  // concatenated direct character data

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attrs)
            if (k == key) return &v;
        return nullptr;
    }

    // First child whose local name (prefix stripped) matches.
    const XmlNode* child(std::string_view local) const;
    std::vector<const XmlNode*> children_named(std::string_view local) const;
};

// "oai:record" -> "record"
inline std::string_view xml_local_name(std::string_view tag) {
    const size_t p = tag.rfind(':');
    return p == std::string_view::npos ? tag : tag.substr(p + 1);
}

inline const XmlNode* XmlNode::child(std::string_view local) const {
    for (const XmlNode& c : children)
        if (xml_local_name(c.name) == local) return &c;
    return nullptr;
}

inline std::vector<const XmlNode*> XmlNode::children_named(
    std::string_view local) const {
    std::vector<const XmlNode*> out;
    for (const XmlNode& c : children)
        if (xml_local_name(c.name) == local) out.push_back(&c);
    return out;
}

namespace detail {

class XmlReader {
public:
    explicit XmlReader(std::string_view doc) : s_(doc) {}

    XmlNode parse_document() {
        skip_bom();
        skip_misc();
        if (eof()) fail("document has no root element");
        XmlNode root = parse_element();
        skip_misc();
        if (!eof()) fail("content after root element");
        return root;
    }

private:
    std::string_view s_;
    size_t pos_ = 0;

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }
    bool starts_with(std::string_view t) const {
        return s_.substr(pos_, t.size()) == t;
    }

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("malformed XML at byte " + std::to_string(pos_) +
                         ": " + why);
    }

    void skip_bom() {
        if (s_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

    void expect(char c) {
        if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void skip_until(std::string_view end, const char* what) {
        const size_t p = s_.find(end, pos_);
        if (p == std::string_view::npos) fail(std::string("unterminated ") + what);
        pos_ = p + end.size();
    }

    // Prolog, comments, PIs, DOCTYPE between elements.
    void skip_misc() {
        for (;;) {
            skip_ws();
            if (starts_with("<?")) {
                skip_until("?>", "processing instruction");
            } else if (starts_with("<!--")) {
                skip_until("-->", "comment");
            } else if (starts_with("<!DOCTYPE")) {
                skip_until(">", "DOCTYPE");
            } else {
                return;
            }
        }
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
               c == '-' || c == '.' || c == ':';
    }

    std::string parse_name() {
        const size_t start = pos_;
        while (!eof() && name_char(peek())) ++pos_;
        if (pos_ == start) fail("expected a name");
        return std::string(s_.substr(start, pos_ - start));
    }

    void append_entity(std::string& out) {
        const size_t semi = s_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 12)
            fail("unterminated entity reference");
        const std::string_view ent = s_.substr(pos_, semi - pos_);
        if (ent == "amp") out += '&';
        else if (ent == "lt") out += '<';
        else if (ent == "gt") out += '>';
        else if (ent == "quot") out += '"';
        else if (ent == "apos") out += '\'';
        else if (ent.size() >= 2 && ent[0] == '#') {
            long code = 0;
            try {
                code = ent[1] == 'x' || ent[1] == 'X'
                           ? std::stol(std::string(ent.substr(2)), nullptr, 16)
                           : std::stol(std::string(ent.substr(1)));
            } catch (...) {
                fail("bad character reference");
            }
            append_utf8(out, code);
        } else {
            fail("unknown entity '&" + std::string(ent) + ";'");
        }
        pos_ = semi + 1;
    }

    static void append_utf8(std::string& out, long cp) {
        if (cp < 0 || cp > 0x10FFFF) cp = 0xFFFD;
        if (cp < 0x80) {
            out += static_cast<char>(cp);
        } else if (cp < 0x800) {
            out += static_cast<char>(0xC0 | (cp >> 6));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else if (cp < 0x10000) {
            out += static_cast<char>(0xE0 | (cp >> 12));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        } else {
            out += static_cast<char>(0xF0 | (cp >> 18));
            out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
            out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
            out += static_cast<char>(0x80 | (cp & 0x3F));
        }
    }

    std::string parse_attr_value() {
        if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quote");
        const char quote = peek();
        ++pos_;
        std::string out;
        while (!eof() && peek() != quote) {
            if (peek() == '&') {
                ++pos_;
                append_entity(out);
            } else {
                out += peek();
                ++pos_;
            }
        }
        expect(quote);
        return out;
    }

    XmlNode parse_element() {
        expect('<');
        XmlNode node;
        node.name = parse_name();

        for (;;) {
            skip_ws();
            if (eof()) fail("unterminated start tag");
            if (peek() == '>') {
                ++pos_;
                break;
            }
            if (starts_with("/>")) {
                pos_ += 2;
                return node;  // empty element
            }
            std::string key = parse_name();
            skip_ws();
            expect('=');
            skip_ws();
            node.attrs.emplace_back(std::move(key), parse_attr_value());
        }

        // Content until the matching end tag.
        for (;;) {
            if (eof()) fail("missing </" + node.name + ">");
            if (peek() == '<') {
                if (starts_with("</")) {
                    pos_ += 2;
                    const std::string closing = parse_name();
                    if (closing != node.name)
                        fail("mismatched end tag </" + closing + ">, expected </" +
                             node.name + ">");
                    skip_ws();
                    expect('>');
                    return node;
                }
                if (starts_with("<!--")) {
                    skip_until("-->", "comment");
                } else if (starts_with("<![CDATA[")) {
                    pos_ += 9;
                    const size_t end = s_.find("]]>", pos_);
                    if (end == std::string_view::npos) fail("unterminated CDATA");
                    node.text.append(s_.substr(pos_, end - pos_));
                    pos_ = end + 3;
                } else if (starts_with("<?")) {
                    skip_until("?>", "processing instruction");
                } else {
                    node.children.push_back(parse_element());
                }
            } else if (peek() == '&') {
                ++pos_;
                append_entity(node.text);
            } else {
                node.text += peek();
                ++pos_;
            }
        }
    }
};

}  // namespace detail

// Parses a complete document and returns its root element.
inline XmlNode xml_parse(std::string_view doc) {
    return detail::XmlReader(doc).parse_document();
}

}  // namespace arxivpipe
