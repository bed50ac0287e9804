#include "polylab/io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace polylab {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string geometry_digest(const IncidenceGeometry& g) {
    std::uint64_t h = fnv1a64(write_geometry(g));
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string("fnv64:") + buf;
}

std::string write_geometry(const IncidenceGeometry& g) {
    std::ostringstream os;
    os << "ig 1\n";
    os << "points " << g.point_count() << "\n";
    os << "lines " << g.line_count() << "\n";
    for (int l = 0; l < g.line_count(); ++l) {
        const std::vector<int>& row = g.points_of_line(l);
        if (row.empty())
            throw DomainError("write_geometry: line " + std::to_string(l) +
                              " has no points and cannot be serialized");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ' ';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

namespace {

// Token lines of the input: comment and blank lines dropped, positions kept
// for diagnostics.
struct SourceLine {
    int number;  // 1-based
    std::string text;
};

std::vector<SourceLine> significant_lines(std::string_view bytes) {
    std::vector<SourceLine> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= bytes.size()) {
        std::size_t nl = bytes.find('\n', pos);
        std::string_view raw = bytes.substr(pos, nl == std::string_view::npos ? bytes.size() - pos
                                                                              : nl - pos);
        ++number;
        std::size_t a = raw.find_first_not_of(" \t\r");
        if (a != std::string_view::npos && raw[a] != '#') {
            std::size_t b = raw.find_last_not_of(" \t\r");
            out.push_back({number, std::string(raw.substr(a, b - a + 1))});
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return out;
}

int parse_int(const SourceLine& line, std::size_t& offset) {
    while (offset < line.text.size() && line.text[offset] == ' ') ++offset;
    if (offset >= line.text.size())
        throw ParseError(line.number, static_cast<int>(offset) + 1, "expected a number");
    int value = 0;
    auto [ptr, ec] = std::from_chars(line.text.data() + offset,
                                     line.text.data() + line.text.size(), value);
    if (ec != std::errc() || value < 0)
        throw ParseError(line.number, static_cast<int>(offset) + 1, "expected a number");
    offset = static_cast<std::size_t>(ptr - line.text.data());
    return value;
}

void expect_end(const SourceLine& line, std::size_t offset) {
    while (offset < line.text.size() && line.text[offset] == ' ') ++offset;
    if (offset != line.text.size())
        throw ParseError(line.number, static_cast<int>(offset) + 1, "unexpected trailing input");
}

const SourceLine& need_line(const std::vector<SourceLine>& lines, std::size_t i,
                            const std::string& what) {
    if (i >= lines.size()) {
        int last = lines.empty() ? 1 : lines.back().number;
        throw ParseError(last, 1, "unexpected end of input, expected " + what);
    }
    return lines[i];
}

int keyword_count(const SourceLine& line, const std::string& keyword) {
    if (line.text.rfind(keyword + " ", 0) != 0)
        throw ParseError(line.number, 1, "expected '" + keyword + " <count>'");
    std::size_t offset = keyword.size();
    int value = parse_int(line, offset);
    expect_end(line, offset);
    return value;
}

}  // namespace

GeometryPtr parse_geometry(std::string_view bytes) {
    std::vector<SourceLine> lines = significant_lines(bytes);
    const SourceLine& header = need_line(lines, 0, "'ig 1'");
    if (header.text != "ig 1") throw ParseError(header.number, 1, "expected header 'ig 1'");
    int points = keyword_count(need_line(lines, 1, "'points N'"), "points");
    int nlines = keyword_count(need_line(lines, 2, "'lines M'"), "lines");
    if (static_cast<int>(lines.size()) - 3 != nlines) {
        int at = lines.size() > 3 ? lines[std::min(lines.size() - 1, std::size_t(3 + nlines))].number
                                  : 3;
        throw ParseError(at, 1,
                         "expected " + std::to_string(nlines) + " line records, found " +
                             std::to_string(lines.size() - 3));
    }
    IncidenceGeometryBuilder b(points, nlines);
    for (int l = 0; l < nlines; ++l) {
        const SourceLine& rec = lines[3 + l];
        std::size_t offset = 0;
        int prev = -1;
        while (offset < rec.text.size()) {
            int col = static_cast<int>(offset) + 1;
            int p = parse_int(rec, offset);
            if (p >= points)
                throw ParseError(rec.number, col,
                                 "point index " + std::to_string(p) + " out of range [0," +
                                     std::to_string(points) + ")");
            if (p <= prev)
                throw ParseError(rec.number, col, "point indices must be strictly increasing");
            prev = p;
            b.add_flag(p, l);
            while (offset < rec.text.size() && rec.text[offset] == ' ') ++offset;
        }
        if (prev < 0) throw ParseError(rec.number, 1, "empty line record");
    }
    return b.build();
}

std::string write_morphism(const GeometryMorphism& m) {
    std::ostringstream os;
    os << "igmap 1\n";
    os << "source " << geometry_digest(*m.source) << "\n";
    os << "target " << geometry_digest(*m.target) << "\n";
    os << "pointmap\n";
    for (std::size_t i = 0; i < m.point_map.size(); ++i)
        os << i << ' ' << m.point_map[i] << "\n";
    os << "linemap\n";
    for (std::size_t i = 0; i < m.line_map.size(); ++i) os << i << ' ' << m.line_map[i] << "\n";
    return os.str();
}

GeometryMorphism parse_morphism(std::string_view bytes, const GeometryPtr& source,
                                const GeometryPtr& target) {
    std::vector<SourceLine> lines = significant_lines(bytes);
    const SourceLine& header = need_line(lines, 0, "'igmap 1'");
    if (header.text != "igmap 1") throw ParseError(header.number, 1, "expected header 'igmap 1'");

    auto reference = [&](std::size_t idx, const std::string& keyword, const IncidenceGeometry& g) {
        const SourceLine& line = need_line(lines, idx, "'" + keyword + " <ref>'");
        if (line.text.rfind(keyword + " ", 0) != 0)
            throw ParseError(line.number, 1, "expected '" + keyword + " <ref>'");
        std::string ref = line.text.substr(keyword.size() + 1);
        if (ref.rfind("fnv64:", 0) == 0 && ref != geometry_digest(g))
            throw ParseError(line.number, static_cast<int>(keyword.size()) + 2,
                             keyword + " digest does not match the supplied geometry");
    };
    reference(1, "source", *source);
    reference(2, "target", *target);

    const SourceLine& pm = need_line(lines, 3, "'pointmap'");
    if (pm.text != "pointmap") throw ParseError(pm.number, 1, "expected 'pointmap'");

    GeometryMorphism m;
    m.source = source;
    m.target = target;
    m.point_map.assign(source->point_count(), -1);
    m.line_map.assign(source->line_count(), -1);

    std::size_t idx = 4;
    auto read_pairs = [&](std::vector<int>& map, int domain, int range,
                          const std::string& what) {
        for (int k = 0; k < domain; ++k) {
            const SourceLine& rec = need_line(lines, idx++, what + " entry");
            std::size_t offset = 0;
            int i = parse_int(rec, offset);
            int j = parse_int(rec, offset);
            expect_end(rec, offset);
            if (i >= domain)
                throw ParseError(rec.number, 1, what + " index out of range");
            if (j >= range)
                throw ParseError(rec.number, 1, what + " value out of range");
            if (map[i] != -1) throw ParseError(rec.number, 1, what + " index repeated");
            map[i] = j;
        }
    };
    read_pairs(m.point_map, source->point_count(), target->point_count(), "pointmap");
    const SourceLine& lm = need_line(lines, idx, "'linemap'");
    if (lm.text != "linemap") throw ParseError(lm.number, 1, "expected 'linemap'");
    ++idx;
    read_pairs(m.line_map, source->line_count(), target->line_count(), "linemap");
    if (idx != lines.size()) {
        throw ParseError(lines[idx].number, 1, "unexpected trailing content");
    }
    return m;
}

}  // namespace polylab
