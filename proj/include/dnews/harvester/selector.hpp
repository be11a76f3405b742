// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The dnews Authors

#pragma once

// CSS selector subset: type, .class, #id, compound forms (div.a.b#x),
// descendant combinator (whitespace) and selector lists (a, b).

#include "dnews/error.hpp"
#include "dnews/harvester/html.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace dnews::html {

struct Compound {
    std::string tag;  // empty matches any element
    std::string id;
    std::vector<std::string> classes;

    bool matches(const Node& n) const {
        if (n.is_text()) return false;
        if (!tag.empty() && tag != "*" && n.tag != tag) return false;
        if (!id.empty() && n.attr("id") != id) return false;
        for (const auto& c : classes) {
            if (!n.has_class(c)) return false;
        }
        return true;
    }
};

/// One complex selector: compounds joined by descendant combinators.
using Complex = std::vector<Compound>;

class Selector {
public:
    static Selector parse(std::string_view text) {
        Selector sel;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto comma = text.find(',', start);
            if (comma == std::string_view::npos) comma = text.size();
            sel.groups_.push_back(parse_complex(text.substr(start, comma - start), text));
            start = comma + 1;
        }
        return sel;
    }

    /// Matching element ids in document order.
    std::vector<std::size_t> select(const Document& doc) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 1; i < doc.size(); ++i) {
            for (const auto& g : groups_) {
                if (matches(doc, i, g)) {
                    out.push_back(i);
                    break;
                }
            }
        }
        return out;
    }

private:
    static Complex parse_complex(std::string_view s, std::string_view whole) {
        Complex out;
        std::size_t i = 0;
        auto bad = [&] { return ConfigError("unsupported selector '" + std::string(whole) + "'"); };
        auto ident = [&](std::size_t& p) {
            const auto b = p;
            while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '-' || s[p] == '_')) ++p;
            if (p == b) throw bad();
            return std::string(s.substr(b, p - b));
        };
        while (i < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[i]))) {
                ++i;
                continue;
            }
            Compound c;
            if (s[i] == '*') {
                ++i;
            } else if (std::isalpha(static_cast<unsigned char>(s[i]))) {
                c.tag = detail::lower(ident(i));
            }
            while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
                if (s[i] == '.') {
                    ++i;
                    c.classes.push_back(ident(i));
                } else if (s[i] == '#') {
                    ++i;
                    c.id = ident(i);
                } else {
                    throw bad();
                }
            }
            out.push_back(std::move(c));
        }
        if (out.empty()) throw bad();
        return out;
    }

    // Right-to-left; for descendant-only chains the nearest matching ancestor suffices.
    static bool matches(const Document& doc, std::size_t id, const Complex& sel) {
        if (!sel.back().matches(doc[id])) return false;
        std::size_t k = sel.size() - 1;
        std::size_t cur = id;
        while (k > 0) {
            if (cur == 0) return false;
            cur = doc[cur].parent;
            if (cur == 0) return false;
            if (sel[k - 1].matches(doc[cur])) --k;
        }
        return true;
    }

    std::vector<Complex> groups_;
};

inline std::vector<std::size_t> select(const Document& doc, std::string_view selector) {
    return Selector::parse(selector).select(doc);
}

}  // namespace dnews::html
