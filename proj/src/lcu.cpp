#include "hlcu/lcu.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace hlcu {

UnitaryTerm::UnitaryTerm(cplx c, ComplexMatrix u) : coefficient(std::abs(c)), unitary(std::move(u)) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("LCU coefficient is not finite");
  const double v = unitarity_violation(unitary);
  if (!(v <= Tolerances::unitarity))
    throw DomainError("LCU term is not unitary: |U^dagger U - I| = " + std::to_string(v));
  if (coefficient > 0.0) unitary *= c / coefficient;
}

LcuDecomposition LcuDecomposition::normalize(std::vector<UnitaryTerm> terms) {
  LcuDecomposition dec;
  if (terms.empty()) throw DegenerateDecompositionError("LCU decomposition has no terms");
  dec.dim_ = static_cast<int>(terms.front().unitary.rows());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].unitary.rows() != dec.dim_)
      throw DomainError("LCU term " + std::to_string(i) + " has mismatched dimension");
    if (terms[i].coefficient == 0.0) {
      dec.warnings_.push_back("dropped term " + std::to_string(i) + " with zero coefficient");
      continue;
    }
    dec.one_norm_ += terms[i].coefficient;
    dec.terms_.push_back(std::move(terms[i]));
  }
  if (dec.terms_.empty()) throw DegenerateDecompositionError("all LCU coefficients are zero");
  for (const auto& t : dec.terms_) dec.probs_.push_back(t.coefficient / dec.one_norm_);
  return dec;
}

ComplexMatrix assemble_klcu(const LcuDecomposition& dec) {
  ComplexMatrix k = ComplexMatrix::Zero(dec.dim(), dec.dim());
  for (int i = 0; i < dec.size(); ++i) k += dec.prob(i) * dec.unitary(i);
  return k;
}

namespace {
void check_dims(const LcuDecomposition& dec, int d) {
  if (dec.dim() != d) throw DomainError("state dimension does not match the LCU decomposition");
}
}  // namespace

double success_probability(const LcuDecomposition& dec, const MixedState& rho) {
  check_dims(dec, rho.dim());
  const ComplexMatrix k = assemble_klcu(dec);
  return (k * rho.matrix() * k.adjoint()).trace().real();
}

MixedState apply_cp_map(const LcuDecomposition& dec, const MixedState& rho) {
  check_dims(dec, rho.dim());
  const ComplexMatrix k = assemble_klcu(dec);
  ComplexMatrix out = k * rho.matrix() * k.adjoint();
  out = 0.5 * (out + out.adjoint());
  return MixedState::unnormalized(std::move(out));
}

double expectation_unnormalized(const LcuDecomposition& dec, const MixedState& rho, const Observable& o) {
  check_dims(dec, rho.dim());
  if (o.dim() != dec.dim()) throw DomainError("observable dimension does not match the LCU decomposition");
  const ComplexMatrix k = assemble_klcu(dec);
  const double n = dec.one_norm();
  return n * n * (o.matrix() * k * rho.matrix() * k.adjoint()).trace().real();
}

void write_lcu(std::ostream& os, const LcuDecomposition& dec) {
  const auto old_prec = os.precision();
  os << "m " << dec.size() << " dim " << dec.dim() << '\n';
  for (const auto& t : dec.terms()) {
    os << std::setprecision(17) << t.coefficient << '\n';
    write_matrix(os, t.unitary);
  }
  os.precision(old_prec);
}

LcuDecomposition read_lcu(std::istream& is) {
  std::string tm, td;
  int m = 0, d = 0;
  if (!(is >> tm >> m >> td >> d) || tm != "m" || td != "dim" || m < 1 || d < 1)
    throw DomainError("LCU file must start with 'm <count> dim <d>'");
  std::string line;
  std::getline(is, line);
  std::vector<UnitaryTerm> terms;
  for (int i = 0; i < m; ++i) {
    // coefficient line: "c" or "re im"
    while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {}
    std::istringstream ls(line);
    double re = 0, im = 0;
    if (!(ls >> re)) throw DomainError("LCU file: missing coefficient for term " + std::to_string(i));
    ls >> im;
    ComplexMatrix u = read_matrix(is);
    if (u.rows() != d || u.cols() != d) throw DomainError("LCU file: term " + std::to_string(i) + " has wrong shape");
    terms.emplace_back(cplx(re, im), std::move(u));
  }
  return LcuDecomposition::normalize(std::move(terms));
}

LcuDecomposition random_lcu(int m, int dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(0.05, 1.0);
  std::vector<UnitaryTerm> terms;
  for (int i = 0; i < m; ++i) {
    const double c = coef(rng);
    terms.emplace_back(c, random_unitary(dim, rng));
  }
  return LcuDecomposition::normalize(std::move(terms));
}

}  // namespace hlcu
