#include <hermeig/errors.hh>

#include <sstream>

namespace hermeig {

namespace {

std::string band_message(std::ptrdiff_t row, std::ptrdiff_t col, double magnitude, double threshold) {
    std::ostringstream os;
    os << "entry (" << row << ", " << col << ") lies outside the band with magnitude " << magnitude
       << " > " << threshold;
    return os.str();
}

}  // namespace

BandViolation::BandViolation(std::ptrdiff_t row, std::ptrdiff_t col, double magnitude, double threshold)
    : Error(band_message(row, col, magnitude, threshold)), row_(row), col_(col) {}

NotPositiveDefinite::NotPositiveDefinite(std::ptrdiff_t pivot_index)
    : Error("matrix is not positive definite (pivot " + std::to_string(pivot_index) + ")"), pivot_(pivot_index) {}

}  // namespace hermeig
