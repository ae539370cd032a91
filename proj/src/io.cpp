#include "conelet/io.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

static_assert(std::endian::native == std::endian::little,
              "container I/O assumes a little-endian host");

namespace conelet {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

// next whitespace-delimited token, skipping '#' comments (PGM convention)
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {}
            continue;
        }
        if (!std::isspace(ch)) {
            tok.push_back(static_cast<char>(ch));
            while ((ch = in.get()) != EOF && !std::isspace(ch) && ch != '#')
                tok.push_back(static_cast<char>(ch));
            if (ch == '#') in.unget();
            return tok;
        }
    }
    return tok;
}

int parse_int(const std::string& tok, const std::string& path) {
    int v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        fail(path, "malformed header field '" + tok + "'");
    return v;
}

} // namespace

std::vector<double> read_pgm(const std::string& path, int& rows, int& cols) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5") fail(path, "not a P2/P5 PGM file");
    cols = parse_int(next_token(in), path);
    rows = parse_int(next_token(in), path);
    int maxval = parse_int(next_token(in), path);
    if (cols <= 0 || rows <= 0 || maxval <= 0 || maxval > 65535)
        fail(path, "invalid dimensions or maxval");

    std::vector<double> img(static_cast<std::size_t>(rows) * cols);
    const double scale = 1.0 / maxval;
    if (magic == "P2") {
        for (auto& v : img) {
            std::string tok = next_token(in);
            if (tok.empty()) fail(path, "truncated pixel data");
            v = parse_int(tok, path) * scale;
        }
    } else {
        // single whitespace byte separates header from raster; already consumed
        // by next_token's trailing-isspace read
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(img.size() * bytes);
        in.read(reinterpret_cast<char*>(buf.data()),
                static_cast<std::streamsize>(buf.size()));
        if (static_cast<std::size_t>(in.gcount()) != buf.size())
            fail(path, "truncated pixel data");
        for (std::size_t i = 0; i < img.size(); ++i) {
            unsigned v = bytes == 2 ? (buf[2 * i] << 8) | buf[2 * i + 1] : buf[i];
            img[i] = v * scale;
        }
    }
    return img;
}

void write_pgm(const std::string& path, const std::vector<double>& img,
               int rows, int cols) {
    if (img.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("dimension mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P5\n" << cols << " " << rows << "\n65535\n";
    std::vector<unsigned char> buf;
    buf.reserve(img.size() * 2);
    for (double v : img) {
        double c = std::min(1.0, std::max(0.0, v));
        unsigned q = static_cast<unsigned>(std::lround(c * 65535.0));
        buf.push_back(static_cast<unsigned char>(q >> 8));
        buf.push_back(static_cast<unsigned char>(q & 0xff));
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    if (!out) fail(path, "write failed");
}

namespace {
constexpr char kMagic[] = "CONELET\n";
constexpr std::size_t kMagicLen = 8;
} // namespace

void write_coefficients(const std::string& path, const CoefficientSet& c) {
    json bands = json::array();
    for (const auto& b : c.subbands) {
        bands.push_back({{"cone", std::string(1, b.cone)},
                         {"j", b.j},
                         {"k", b.k},
                         {"d1", b.d1},
                         {"d2", b.d2},
                         {"n1", b.n1},
                         {"n2", b.n2},
                         {"offset", b.offset}});
    }
    json hdr{{"N", c.N},       {"j_max", c.j_max}, {"K", c.K},
             {"L", c.L},       {"c1", c.c1},       {"c2", c.c2},
             {"count", c.data.size()},             {"subbands", bands}};
    std::string htxt = hdr.dump();

    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out.write(kMagic, kMagicLen);
    std::uint64_t hlen = htxt.size();
    out.write(reinterpret_cast<const char*>(&hlen), 8);
    out.write(htxt.data(), static_cast<std::streamsize>(htxt.size()));
    out.write(reinterpret_cast<const char*>(c.data.data()),
              static_cast<std::streamsize>(c.data.size() * sizeof(double)));
    if (!out) fail(path, "write failed");
}

CoefficientSet read_coefficients(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    char magic[kMagicLen];
    in.read(magic, kMagicLen);
    if (!in || std::memcmp(magic, kMagic, kMagicLen) != 0)
        fail(path, "not a coefficient container");
    std::uint64_t hlen = 0;
    in.read(reinterpret_cast<char*>(&hlen), 8);
    if (!in || hlen > (1ULL << 24)) fail(path, "bad header length");
    std::string htxt(hlen, '\0');
    in.read(htxt.data(), static_cast<std::streamsize>(hlen));
    if (!in) fail(path, "truncated header");

    json hdr = json::parse(htxt, nullptr, false);
    if (hdr.is_discarded()) fail(path, "malformed header JSON");

    CoefficientSet c;
    try {
        c.N = hdr.at("N").get<int>();
        c.j_max = hdr.at("j_max").get<int>();
        c.K = hdr.at("K").get<int>();
        c.L = hdr.at("L").get<int>();
        c.c1 = hdr.at("c1").get<double>();
        c.c2 = hdr.at("c2").get<double>();
        std::size_t count = hdr.at("count").get<std::size_t>();
        for (const auto& jb : hdr.at("subbands")) {
            SubbandInfo b;
            b.cone = jb.at("cone").get<std::string>().at(0);
            b.j = jb.at("j").get<int>();
            b.k = jb.at("k").get<int>();
            b.d1 = jb.at("d1").get<int>();
            b.d2 = jb.at("d2").get<int>();
            b.n1 = jb.at("n1").get<int>();
            b.n2 = jb.at("n2").get<int>();
            b.offset = jb.at("offset").get<std::size_t>();
            if (b.n1 <= 0 || b.n2 <= 0) fail(path, "invalid subband shape");
            c.subbands.push_back(b);
        }
        c.data.resize(count);
    } catch (const json::exception& e) {
        fail(path, std::string("header: ") + e.what());
    }
    std::size_t expect = 0;
    for (const auto& b : c.subbands) {
        if (b.offset != expect) fail(path, "inconsistent subband offsets");
        expect += static_cast<std::size_t>(b.n1) * b.n2;
    }
    if (expect != c.data.size()) fail(path, "count does not match subband table");

    in.read(reinterpret_cast<char*>(c.data.data()),
            static_cast<std::streamsize>(c.data.size() * sizeof(double)));
    if (static_cast<std::size_t>(in.gcount()) != c.data.size() * sizeof(double))
        fail(path, "truncated data");
    return c;
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

} // namespace conelet
