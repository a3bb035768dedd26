#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "momd/errors.hpp"
#include "momd/graph.hpp"
#include "momd/io.hpp"

namespace momd {

// Minimal XML pull scanner, just enough for OSM extracts: start/end tags,
// attributes, self-closing tags, comments, prolog, DOCTYPE and CDATA.
// Text content is skipped.
class XmlScanner {
public:
    enum class Event { StartTag, EndTag, Eof };

    explicit XmlScanner(std::string_view doc) : doc_(doc), pos_(0) {}

    Event next() {
        attrs_.clear();
        self_closing_ = false;
        for (;;) {
            std::size_t lt = doc_.find('<', pos_);
            if (lt == std::string_view::npos) {
                pos_ = doc_.size();
                return Event::Eof;
            }
            pos_ = lt + 1;
            if (starts_with("?")) {
                skip_until("?>");
                continue;
            }
            if (starts_with("!--")) {
                skip_until("-->");
                continue;
            }
            if (starts_with("![CDATA[")) {
                skip_until("]]>");
                continue;
            }
            if (starts_with("!")) { // DOCTYPE and friends
                skip_until(">");
                continue;
            }
            if (starts_with("/")) {
                ++pos_;
                name_ = read_name();
                skip_space();
                expect('>');
                return Event::EndTag;
            }
            name_ = read_name();
            read_attrs();
            return Event::StartTag;
        }
    }

    const std::string& name() const { return name_; }
    bool self_closing() const { return self_closing_; }

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attrs_)
            if (k == key)
                return &v;
        return nullptr;
    }

private:
    bool starts_with(std::string_view s) const {
        return doc_.compare(pos_, s.size(), s) == 0;
    }

    void skip_until(std::string_view terminator) {
        std::size_t p = doc_.find(terminator, pos_);
        if (p == std::string_view::npos)
            raise(ErrorKind::MalformedXml,
                  "unterminated construct, expected '" + std::string(terminator) + "'");
        pos_ = p + terminator.size();
    }

    void skip_space() {
        while (pos_ < doc_.size() && std::isspace(static_cast<unsigned char>(doc_[pos_])))
            ++pos_;
    }

    void expect(char c) {
        if (pos_ >= doc_.size() || doc_[pos_] != c)
            raise(ErrorKind::MalformedXml,
                  std::string("expected '") + c + "' at offset " + std::to_string(pos_));
        ++pos_;
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
               c == ':' || c == '.';
    }

    std::string read_name() {
        std::size_t start = pos_;
        while (pos_ < doc_.size() && name_char(doc_[pos_]))
            ++pos_;
        if (pos_ == start)
            raise(ErrorKind::MalformedXml, "missing tag name at offset " + std::to_string(start));
        return std::string(doc_.substr(start, pos_ - start));
    }

    void read_attrs() {
        for (;;) {
            skip_space();
            if (pos_ >= doc_.size())
                raise(ErrorKind::MalformedXml, "unexpected end of file inside tag");
            char c = doc_[pos_];
            if (c == '>') {
                ++pos_;
                return;
            }
            if (c == '/') {
                ++pos_;
                expect('>');
                self_closing_ = true;
                return;
            }
            std::string key = read_name();
            skip_space();
            expect('=');
            skip_space();
            if (pos_ >= doc_.size() || (doc_[pos_] != '"' && doc_[pos_] != '\''))
                raise(ErrorKind::MalformedXml, "attribute value for '" + key + "' not quoted");
            char quote = doc_[pos_++];
            std::size_t end = doc_.find(quote, pos_);
            if (end == std::string_view::npos)
                raise(ErrorKind::MalformedXml, "unterminated attribute value for '" + key + "'");
            attrs_.emplace_back(std::move(key), decode(doc_.substr(pos_, end - pos_)));
            pos_ = end + 1;
        }
    }

    static std::string decode(std::string_view raw) {
        if (raw.find('&') == std::string_view::npos)
            return std::string(raw);
        std::string out;
        out.reserve(raw.size());
        std::size_t i = 0;
        while (i < raw.size()) {
            if (raw[i] != '&') {
                out += raw[i++];
                continue;
            }
            std::size_t semi = raw.find(';', i);
            if (semi == std::string_view::npos)
                raise(ErrorKind::MalformedXml, "unterminated entity reference");
            std::string_view ent = raw.substr(i + 1, semi - i - 1);
            if (ent == "amp") out += '&';
            else if (ent == "lt") out += '<';
            else if (ent == "gt") out += '>';
            else if (ent == "quot") out += '"';
            else if (ent == "apos") out += '\'';
            else if (!ent.empty() && ent[0] == '#') {
                int base = 10;
                std::string_view digits = ent.substr(1);
                if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
                    base = 16;
                    digits = digits.substr(1);
                }
                unsigned long code = 0;
                if (digits.empty())
                    raise(ErrorKind::MalformedXml, "empty character reference");
                for (char d : digits) {
                    int dv;
                    if (d >= '0' && d <= '9') dv = d - '0';
                    else if (base == 16 && d >= 'a' && d <= 'f') dv = d - 'a' + 10;
                    else if (base == 16 && d >= 'A' && d <= 'F') dv = d - 'A' + 10;
                    else raise(ErrorKind::MalformedXml, "bad character reference");
                    code = code * base + static_cast<unsigned long>(dv);
                }
                if (code > 0x10FFFF)
                    raise(ErrorKind::MalformedXml, "character reference out of range");
                // encode as UTF-8
                if (code < 0x80) out += static_cast<char>(code);
                else if (code < 0x800) {
                    out += static_cast<char>(0xC0 | (code >> 6));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                } else if (code < 0x10000) {
                    out += static_cast<char>(0xE0 | (code >> 12));
                    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                } else {
                    out += static_cast<char>(0xF0 | (code >> 18));
                    out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
                    out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
                    out += static_cast<char>(0x80 | (code & 0x3F));
                }
            } else
                raise(ErrorKind::MalformedXml, "unknown entity '&" + std::string(ent) + ";'");
            i = semi + 1;
        }
        return out;
    }

    std::string_view doc_;
    std::size_t pos_;
    std::string name_;
    std::vector<std::pair<std::string, std::string>> attrs_;
    bool self_closing_ = false;
};

struct OsmOptions {
    bool keep_all_ways = false; // default keeps only ways carrying a highway tag
};

struct ParsedOsm {
    Graph graph;
    std::vector<std::int64_t> source_ids; // dense vertex id -> OSM node id
    std::size_t nodes_seen = 0;
    std::size_t nodes_invalid = 0;
    std::size_t ways_seen = 0;
    std::size_t ways_kept = 0;
};

inline ParsedOsm parse_osm(std::string_view xml, const OsmOptions& opts = {}) {
    XmlScanner scan(xml);

    std::unordered_map<std::int64_t, GeoPoint> nodes;
    std::unordered_set<std::int64_t> invalid_nodes;
    std::vector<std::vector<std::int64_t>> kept_ways;
    ParsedOsm out;

    std::vector<std::string> open;
    bool saw_root = false;
    bool in_way = false;
    bool way_is_road = false;
    std::vector<std::int64_t> way_refs;

    auto parse_i64 = [](const std::string& s, const char* what) -> std::int64_t {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            raise(ErrorKind::MalformedXml, std::string(what) + " is not an integer: '" + s + "'");
        return v;
    };
    auto parse_f64 = [](const std::string& s, const char* what) -> double {
        double v = 0.0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            raise(ErrorKind::MalformedXml, std::string(what) + " is not a number: '" + s + "'");
        return v;
    };

    auto handle_start = [&]() {
        const std::string& tag = scan.name();
        if (tag == "node") {
            if (in_way)
                raise(ErrorKind::MalformedXml, "node element inside way");
            const std::string* id = scan.attr("id");
            const std::string* lat = scan.attr("lat");
            const std::string* lon = scan.attr("lon");
            if (!id || !lat || !lon)
                raise(ErrorKind::MalformedXml, "node missing id/lat/lon attribute");
            std::int64_t nid = parse_i64(*id, "node id");
            double la = parse_f64(*lat, "node lat");
            double lo = parse_f64(*lon, "node lon");
            ++out.nodes_seen;
            if (!(la >= -90.0 && la <= 90.0) || !(lo >= -180.0 && lo <= 180.0)) {
                invalid_nodes.insert(nid);
                nodes.erase(nid);
                ++out.nodes_invalid;
            } else {
                invalid_nodes.erase(nid);
                nodes[nid] = GeoPoint{la, lo};
            }
        } else if (tag == "way") {
            if (in_way)
                raise(ErrorKind::MalformedXml, "way element inside way");
            in_way = true;
            way_is_road = false;
            way_refs.clear();
            ++out.ways_seen;
        } else if (tag == "nd") {
            if (in_way) {
                const std::string* ref = scan.attr("ref");
                if (!ref)
                    raise(ErrorKind::MalformedXml, "nd missing ref attribute");
                way_refs.push_back(parse_i64(*ref, "nd ref"));
            }
        } else if (tag == "tag") {
            if (in_way) {
                const std::string* k = scan.attr("k");
                if (k && *k == "highway")
                    way_is_road = true;
            }
        }
    };

    auto finish_way = [&]() {
        if (way_is_road || opts.keep_all_ways) {
            ++out.ways_kept;
            kept_ways.push_back(way_refs);
        }
        in_way = false;
    };

    for (;;) {
        XmlScanner::Event ev = scan.next();
        if (ev == XmlScanner::Event::Eof)
            break;
        if (ev == XmlScanner::Event::StartTag) {
            if (open.empty()) {
                if (scan.name() != "osm")
                    raise(ErrorKind::MalformedXml,
                          "root element must be <osm>, found <" + scan.name() + ">");
                saw_root = true;
            }
            bool was_way = scan.name() == "way";
            handle_start();
            if (!scan.self_closing())
                open.push_back(scan.name());
            else if (was_way && in_way)
                finish_way();
            continue;
        }
        // end tag
        if (open.empty() || open.back() != scan.name())
            raise(ErrorKind::MalformedXml, "mismatched closing tag </" + scan.name() + ">");
        open.pop_back();
        if (scan.name() == "way" && in_way)
            finish_way();
    }
    if (!open.empty())
        raise(ErrorKind::MalformedXml, "unclosed element <" + open.back() + ">");
    if (!saw_root)
        raise(ErrorKind::MalformedXml, "no <osm> element in the document");

    // vertices: valid nodes referenced by kept ways, dense ids by ascending OSM id
    std::vector<std::int64_t> used;
    for (const auto& refs : kept_ways) {
        for (std::int64_t r : refs) {
            if (invalid_nodes.count(r))
                continue;
            if (!nodes.count(r))
                raise(ErrorKind::MissingNodeReference,
                      "way references node " + std::to_string(r) + " which is not in the file");
            used.push_back(r);
        }
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    std::unordered_map<std::int64_t, VertexId> dense;
    dense.reserve(used.size());
    GraphBuilder b(MetricKind::geographic);
    for (std::int64_t osm_id : used) {
        const GeoPoint& p = nodes[osm_id];
        dense[osm_id] = b.add_vertex(Position{p.lat, p.lon});
    }
    for (const auto& refs : kept_ways) {
        for (std::size_t i = 0; i + 1 < refs.size(); ++i) {
            if (invalid_nodes.count(refs[i]) || invalid_nodes.count(refs[i + 1]))
                continue;
            b.add_edge_auto(dense[refs[i]], dense[refs[i + 1]]);
        }
    }
    out.graph = b.build();
    out.source_ids = std::move(used);
    return out;
}

inline ParsedOsm parse_osm_file(const std::string& path, const OsmOptions& opts = {}) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        raise(ErrorKind::Io, "cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    if (f.bad())
        raise(ErrorKind::Io, "read failed on " + path);
    std::string doc = std::move(buf).str();
    return parse_osm(doc, opts);
}

inline void write_id_map(const ParsedOsm& parsed, const std::string& path) {
    std::ofstream f(path);
    if (!f)
        raise(ErrorKind::Io, "cannot open " + path + " for writing");
    for (std::size_t v = 0; v < parsed.source_ids.size(); ++v)
        f << v << ' ' << parsed.source_ids[v] << '\n';
    f.flush();
    if (!f)
        raise(ErrorKind::Io, "write failed on " + path);
}

} // namespace momd
