#include <hermeig/matrix_io.hh>

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hermeig {

namespace {

constexpr std::array<char, 4> magic{'H', 'E', 'I', 'G'};

void put_u32(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                           static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(bytes, 4);
}

void put_f64(std::ostream& out, double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(bytes, 8);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw FormatError("HEIG: truncated header");
    return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
           static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

double get_f64(std::istream& in) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw FormatError("HEIG: truncated payload");
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return std::bit_cast<double>(bits);
}

double parse_double(const char* first, const char* last, const std::string& token) {
    if (first != last && *first == '+') ++first;
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, x);
    if (ec != std::errc{} || ptr != last) throw FormatError("cannot parse number in '" + token + "'");
    return x;
}

}  // namespace

void write_heig(std::ostream& out, ConstMatrixView<cplx> m, HeigKind kind) {
    if (m.rows != m.cols) throw DimensionMismatch("HEIG stores square matrices only");
    out.write(magic.data(), 4);
    put_u32(out, heig_version);
    put_u32(out, static_cast<std::uint32_t>(m.rows));
    put_u32(out, static_cast<std::uint32_t>(kind));
    for (index_t j = 0; j < m.cols; ++j)
        for (index_t i = 0; i < m.rows; ++i) {
            put_f64(out, m(i, j).real());
            put_f64(out, m(i, j).imag());
        }
    if (!out) throw FormatError("HEIG: write failed");
}

void write_heig(const std::string& path, ConstMatrixView<cplx> m, HeigKind kind) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    write_heig(out, m, kind);
}

HeigMatrix read_heig(std::istream& in) {
    std::array<char, 4> head{};
    if (!in.read(head.data(), 4) || head != magic) throw FormatError("HEIG: bad magic");
    const std::uint32_t version = get_u32(in);
    if (version != heig_version) throw FormatError("HEIG: unsupported version " + std::to_string(version));
    const std::uint32_t n = get_u32(in);
    const std::uint32_t kind = get_u32(in);
    if (kind > 2) throw FormatError("HEIG: unknown kind " + std::to_string(kind));
    if (n == 0) throw FormatError("HEIG: empty matrix");
    HeigMatrix out{static_cast<HeigKind>(kind), Matrix<cplx>(n, n)};
    for (index_t j = 0; j < out.data.cols(); ++j)
        for (index_t i = 0; i < out.data.rows(); ++i) {
            const double re = get_f64(in);
            const double im = get_f64(in);
            out.data(i, j) = cplx(re, im);
        }
    return out;
}

HeigMatrix read_heig(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_heig(in);
}

cplx parse_complex(const std::string& token) {
    if (token.empty()) throw FormatError("empty matrix entry");
    const char* begin = token.data();
    const char* end = begin + token.size();
    if (token.back() != 'j' && token.back() != 'i') return parse_double(begin, end, token);
    // Split before the last sign that does not belong to an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t p = token.size() - 1; p > 0; --p) {
        if ((token[p] == '+' || token[p] == '-') && token[p - 1] != 'e' && token[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, token.size() == 1 ? 1.0 : parse_double(begin, end - 1, token)};
    const double re = parse_double(begin, begin + split, token);
    const char* im_first = begin + split;
    const char* im_last = end - 1;
    double im = 0.0;
    if (im_last - im_first == 1) {
        im = *im_first == '-' ? -1.0 : 1.0;
    } else {
        im = parse_double(im_first, im_last, token);
    }
    return {re, im};
}

Matrix<cplx> read_text_matrix(std::istream& in) {
    std::vector<std::vector<cplx>> rows;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<cplx> row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_complex(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    const auto n = static_cast<index_t>(rows.size());
    if (n == 0) throw FormatError("text matrix: no rows");
    Matrix<cplx> m(n, n);
    for (index_t i = 0; i < n; ++i) {
        if (static_cast<index_t>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw FormatError("text matrix: row " + std::to_string(i + 1) + " does not have " + std::to_string(n) +
                              " entries");
        for (index_t j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
}

Matrix<cplx> read_text_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    return read_text_matrix(in);
}

HeigMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    char head[4] = {};
    in.read(head, 4);
    const bool binary = in.gcount() == 4 && std::memcmp(head, magic.data(), 4) == 0;
    in.clear();
    in.seekg(0);
    if (binary) return read_heig(in);
    return {HeigKind::General, read_text_matrix(in)};
}

}  // namespace hermeig
