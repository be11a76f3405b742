// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

// Error-recovering HTML tree builder. It handles the markup found on news
// article pages; it is not an HTML5-conformant parser.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace dnews::html {

struct Node {
    std::string tag;  // lowercase; empty for text nodes
    std::map<std::string, std::string> attrs;
    std::string text;  // text nodes only, entities decoded
    std::size_t parent = 0;
    std::vector<std::size_t> children;

    bool is_text() const noexcept { return tag.empty(); }

    std::string_view attr(const std::string& name) const {
        const auto it = attrs.find(name);
        return it == attrs.end() ? std::string_view{} : std::string_view(it->second);
    }

    bool has_class(std::string_view cls) const {
        const auto classes = attr("class");
        std::size_t pos = 0;
        while (pos < classes.size()) {
            const auto b = classes.find_first_not_of(" \t\n\r\f", pos);
            if (b == std::string_view::npos) break;
            auto e = classes.find_first_of(" \t\n\r\f", b);
            if (e == std::string_view::npos) e = classes.size();
            if (classes.substr(b, e - b) == cls) return true;
            pos = e;
        }
        return false;
    }
};

/// Node 0 is the synthetic document root (tag "#document").
struct Document {
    std::vector<Node> nodes;

    const Node& root() const { return nodes.front(); }
    const Node& operator[](std::size_t i) const { return nodes[i]; }
    std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

inline std::string lower(std::string_view s) {
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x110000) {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline bool is_void(std::string_view tag) {
    static constexpr std::string_view kVoid[] = {"area", "base", "br",   "col",   "embed", "hr",  "img",
                                                 "input", "link", "meta", "param", "source", "track", "wbr"};
    return std::ranges::find(kVoid, tag) != std::end(kVoid);
}

inline bool is_inline(std::string_view tag) {
    static constexpr std::string_view kInline[] = {"a",    "abbr", "b",  "cite", "code",  "em",  "i",   "mark",
                                                  "q",    "s",    "small", "span", "strong", "sub", "sup", "time",
                                                  "u"};
    return std::ranges::find(kInline, tag) != std::end(kInline);
}

inline bool is_raw_text(std::string_view tag) { return tag == "script" || tag == "style"; }

// Tags whose start implicitly closes an open <p>.
inline bool closes_paragraph(std::string_view tag) {
    static constexpr std::string_view kBlock[] = {"address", "article", "aside", "blockquote", "div",    "dl",
                                                  "fieldset", "footer", "form",  "h1",         "h2",     "h3",
                                                  "h4",       "h5",     "h6",    "header",     "hr",     "main",
                                                  "nav",      "ol",     "p",     "pre",        "section", "table",
                                                  "ul",       "figure"};
    return std::ranges::find(kBlock, tag) != std::end(kBlock);
}

}  // namespace detail

/// Decodes named (common subset) and numeric character references.
inline std::string decode_entities(std::string_view s) {
    static const std::map<std::string, std::string, std::less<>> kNamed{
        {"amp", "&"},       {"lt", "<"},        {"gt", ">"},        {"quot", "\""},     {"apos", "'"},
        {"nbsp", " "},      {"ndash", "–"}, {"mdash", "—"}, {"lsquo", "‘"}, {"rsquo", "’"},
        {"ldquo", "“"}, {"rdquo", "”"}, {"hellip", "…"}, {"ntilde", "ñ"}, {"Ntilde", "Ñ"},
        {"eacute", "é"}, {"copy", "©"}};
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '&') {
            out.push_back(s[i]);
            continue;
        }
        const auto semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back('&');
            continue;
        }
        const auto name = s.substr(i + 1, semi - i - 1);
        if (!name.empty() && name[0] == '#') {
            std::uint32_t cp = 0;
            const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
            const auto digits = name.substr(hex ? 2 : 1);
            const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
            if (ec == std::errc{} && p == digits.data() + digits.size() && !digits.empty()) {
                detail::append_utf8(out, cp);
                i = semi;
                continue;
            }
        } else if (const auto it = kNamed.find(name); it != kNamed.end()) {
            out += it->second;
            i = semi;
            continue;
        }
        out.push_back('&');
    }
    return out;
}

/// Builds a tree from arbitrary markup. Unknown end tags are ignored,
/// unclosed elements are closed at end of input, comments/doctypes dropped.
inline Document parse(std::string_view src) {
    Document doc;
    doc.nodes.push_back(Node{"#document", {}, {}, 0, {}});
    std::vector<std::size_t> open{0};

    auto add_node = [&](Node n) {
        n.parent = open.back();
        const auto id = doc.nodes.size();
        doc.nodes.push_back(std::move(n));
        doc.nodes[doc.nodes[id].parent].children.push_back(id);
        return id;
    };
    auto add_text = [&](std::string_view raw) {
        if (raw.empty()) return;
        Node t;
        t.text = decode_entities(raw);
        add_node(std::move(t));
    };
    auto close_tag = [&](std::string_view tag) {
        for (std::size_t k = open.size(); k-- > 1;) {
            if (doc.nodes[open[k]].tag == tag) {
                open.resize(k);
                return;
            }
        }
    };

    std::size_t i = 0;
    while (i < src.size()) {
        const auto lt = src.find('<', i);
        if (lt == std::string_view::npos) {
            add_text(src.substr(i));
            break;
        }
        add_text(src.substr(i, lt - i));
        i = lt;
        if (src.compare(i, 4, "<!--") == 0) {
            const auto end = src.find("-->", i + 4);
            i = end == std::string_view::npos ? src.size() : end + 3;
            continue;
        }
        if (i + 1 < src.size() && (src[i + 1] == '!' || src[i + 1] == '?')) {
            const auto end = src.find('>', i);
            i = end == std::string_view::npos ? src.size() : end + 1;
            continue;
        }
        const bool closing = i + 1 < src.size() && src[i + 1] == '/';
        std::size_t p = i + (closing ? 2 : 1);
        const auto name_begin = p;
        while (p < src.size() && (std::isalnum(static_cast<unsigned char>(src[p])) || src[p] == '-' || src[p] == ':')) ++p;
        if (p == name_begin) {
            // A bare '<' in text.
            add_text("<");
            ++i;
            continue;
        }
        const auto tag = detail::lower(src.substr(name_begin, p - name_begin));

        Node el;
        el.tag = tag;
        bool self_closing = false;
        // Attributes up to the closing '>' (quoted values may contain '>').
        while (p < src.size() && src[p] != '>') {
            const unsigned char c = static_cast<unsigned char>(src[p]);
            if (std::isspace(c)) {
                ++p;
                continue;
            }
            if (c == '/') {
                self_closing = true;
                ++p;
                continue;
            }
            const auto an_begin = p;
            while (p < src.size() && !std::isspace(static_cast<unsigned char>(src[p])) && src[p] != '=' &&
                   src[p] != '>' && src[p] != '/') {
                ++p;
            }
            auto name = detail::lower(src.substr(an_begin, p - an_begin));
            while (p < src.size() && std::isspace(static_cast<unsigned char>(src[p]))) ++p;
            std::string value;
            if (p < src.size() && src[p] == '=') {
                ++p;
                while (p < src.size() && std::isspace(static_cast<unsigned char>(src[p]))) ++p;
                if (p < src.size() && (src[p] == '"' || src[p] == '\'')) {
                    const char q = src[p++];
                    const auto end = src.find(q, p);
                    const auto stop = end == std::string_view::npos ? src.size() : end;
                    value = decode_entities(src.substr(p, stop - p));
                    p = stop == src.size() ? stop : stop + 1;
                } else {
                    const auto v_begin = p;
                    while (p < src.size() && !std::isspace(static_cast<unsigned char>(src[p])) && src[p] != '>') ++p;
                    value = decode_entities(src.substr(v_begin, p - v_begin));
                }
            }
            if (!name.empty() && !el.attrs.contains(name)) el.attrs.emplace(std::move(name), std::move(value));
        }
        i = p < src.size() ? p + 1 : src.size();

        if (closing) {
            close_tag(tag);
            continue;
        }
        if (detail::closes_paragraph(tag) && doc.nodes[open.back()].tag == "p") open.pop_back();
        if ((tag == "li" || tag == "option" || tag == "tr" || tag == "td" || tag == "th") &&
            doc.nodes[open.back()].tag == tag) {
            open.pop_back();
        }
        const auto id = add_node(std::move(el));
        if (self_closing || detail::is_void(tag)) continue;
        if (detail::is_raw_text(tag)) {
            const std::string end_marker = "</" + tag;
            std::size_t end = i;
            for (;;) {
                end = src.find("</", end);
                if (end == std::string_view::npos || detail::lower(src.substr(end, end_marker.size())) == end_marker) break;
                end += 2;
            }
            const auto stop = end == std::string_view::npos ? src.size() : end;
            Node t;
            t.text = std::string(src.substr(i, stop - i));
            t.parent = id;
            doc.nodes.push_back(std::move(t));
            doc.nodes[id].children.push_back(doc.nodes.size() - 1);
            const auto gt = stop == src.size() ? std::string_view::npos : src.find('>', stop);
            i = gt == std::string_view::npos ? src.size() : gt + 1;
            continue;
        }
        open.push_back(id);
    }
    return doc;
}

/// Concatenated descendant text with whitespace collapsed; script and style
/// content excluded.
inline std::string text_content(const Document& doc, std::size_t id) {
    std::string raw;
    std::vector<std::size_t> stack{id};
    while (!stack.empty()) {
        const auto n = stack.back();
        stack.pop_back();
        const auto& node = doc[n];
        if (node.is_text()) {
            raw += node.text;
            continue;
        }
        if (detail::is_raw_text(node.tag)) continue;
        if (!detail::is_inline(node.tag)) raw.push_back(' ');  // block boundaries separate words
        for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);
    }
    std::string out;
    bool space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = !out.empty();
            continue;
        }
        if (space) out.push_back(' ');
        space = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace dnews::html
