#pragma once

#include <hermeig/matrix.hh>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace hermeig {

enum class HeigKind : std::uint32_t { General = 0, Hermitian = 1, HermitianPositiveDefinite = 2 };

inline constexpr std::uint32_t heig_version = 1;

struct HeigMatrix {
    HeigKind kind = HeigKind::General;
    Matrix<cplx> data;
};

/// Binary container: "HEIG", version, n, kind (little-endian u32 each), then
/// n * n (re, im) little-endian doubles in column-major order.
void write_heig(std::ostream& out, ConstMatrixView<cplx> m, HeigKind kind);
void write_heig(const std::string& path, ConstMatrixView<cplx> m, HeigKind kind);
HeigMatrix read_heig(std::istream& in);
HeigMatrix read_heig(const std::string& path);

/// Text import: one row per line, entries such as `1.5`, `2-0.5j`, `3e-2+1j`.
Matrix<cplx> read_text_matrix(std::istream& in);
Matrix<cplx> read_text_matrix(const std::string& path);

/// Reads either format, chosen by the leading magic bytes.
HeigMatrix read_matrix_file(const std::string& path);

/// Parses one `re+imj` entry; throws FormatError.
cplx parse_complex(const std::string& token);

}  // namespace hermeig
