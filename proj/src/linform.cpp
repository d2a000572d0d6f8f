#include "ratioavg/linform.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "ratioavg/error.hpp"

namespace ratioavg {

namespace {

void require_same_rank(const LinForm& a, const LinForm& b) {
    if (a.psi2.size() != b.psi2.size() || a.phi2.size() != b.phi2.size())
        fail(ErrorCode::InvalidArgument, "linear forms of different rank");
}

void append_term(std::ostringstream& out, int twice, const char* symbol, int index) {
    if (twice == 0) return;
    const bool first = out.tellp() == 0;
    if (twice < 0)
        out << (first ? "-" : " - ");
    else if (!first)
        out << " + ";
    const int mag = std::abs(twice);
    if (mag % 2 == 0) {
        if (mag != 2) out << mag / 2 << ' ';
    } else {
        out << mag << "/2 ";
    }
    out << symbol << index;
}

}  // namespace

LinForm LinForm::zero(int rank) {
    const auto n = static_cast<std::size_t>(rank);
    return LinForm{std::vector<int>(n, 0), std::vector<int>(n, 0)};
}

LinForm LinForm::psi(int rank, int j, int coeff) {
    LinForm f = zero(rank);
    f.psi2.at(static_cast<std::size_t>(j)) = 2 * coeff;
    return f;
}

LinForm LinForm::phi(int rank, int j, int coeff) {
    LinForm f = zero(rank);
    f.phi2.at(static_cast<std::size_t>(j)) = 2 * coeff;
    return f;
}

LinForm LinForm::weight(std::vector<int> twice_m, std::vector<int> twice_n) {
    if (twice_m.size() != twice_n.size())
        fail(ErrorCode::InvalidArgument, "weight: m and n of different length");
    for (int& v : twice_n) v = -v;
    return LinForm{std::move(twice_m), std::move(twice_n)};
}

bool LinForm::is_zero() const {
    return std::all_of(psi2.begin(), psi2.end(), [](int v) { return v == 0; }) &&
           std::all_of(phi2.begin(), phi2.end(), [](int v) { return v == 0; });
}

bool LinForm::is_integral() const {
    auto even = [](int v) { return v % 2 == 0; };
    return std::all_of(psi2.begin(), psi2.end(), even) &&
           std::all_of(phi2.begin(), phi2.end(), even);
}

int LinForm::phi2_total() const { return std::accumulate(phi2.begin(), phi2.end(), 0); }

std::complex<double> LinForm::evaluate(std::span<const std::complex<double>> psi,
                                       std::span<const std::complex<double>> phi) const {
    if (psi.size() != psi2.size() || phi.size() != phi2.size())
        fail(ErrorCode::InvalidArgument, "LinForm::evaluate: coordinate length mismatch");
    constexpr std::complex<double> I{0.0, 1.0};
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < psi2.size(); ++j) {
        acc += 0.5 * psi2[j] * I * psi[j];
        acc += 0.5 * phi2[j] * phi[j];
    }
    return acc;
}

LinForm& LinForm::operator+=(const LinForm& other) {
    require_same_rank(*this, other);
    for (std::size_t j = 0; j < psi2.size(); ++j) {
        psi2[j] += other.psi2[j];
        phi2[j] += other.phi2[j];
    }
    return *this;
}

LinForm& LinForm::operator-=(const LinForm& other) {
    require_same_rank(*this, other);
    for (std::size_t j = 0; j < psi2.size(); ++j) {
        psi2[j] -= other.psi2[j];
        phi2[j] -= other.phi2[j];
    }
    return *this;
}

LinForm LinForm::operator-() const {
    LinForm f = *this;
    for (int& v : f.psi2) v = -v;
    for (int& v : f.phi2) v = -v;
    return f;
}

LinForm operator*(int k, LinForm a) {
    for (int& v : a.psi2) v *= k;
    for (int& v : a.phi2) v *= k;
    return a;
}

std::string LinForm::to_string() const {
    std::ostringstream out;
    for (std::size_t j = 0; j < psi2.size(); ++j)
        append_term(out, psi2[j], "i psi", static_cast<int>(j) + 1);
    for (std::size_t j = 0; j < phi2.size(); ++j)
        append_term(out, phi2[j], "phi", static_cast<int>(j) + 1);
    const std::string s = out.str();
    return s.empty() ? "0" : s;
}

std::size_t LinFormHash::operator()(const LinForm& f) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](int v) {
        h ^= static_cast<std::size_t>(static_cast<unsigned>(v)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (int v : f.psi2) mix(v);
    for (int v : f.phi2) mix(v);
    return h;
}

}  // namespace ratioavg
