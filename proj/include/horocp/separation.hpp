#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "horocp/horoboundary.hpp"
#include "horocp/length.hpp"

namespace horocp {

struct SublinearityReport {
  Element g;
  std::int64_t horizon = 0;
  double ratio = 0;          // l(g^I) / I
  double fekete_value = 0;   // min_{i <= I} l(g^i) / i
  // Formula lengths only: geometric horizons beyond I and l(g^J)/J there.
  std::vector<std::int64_t> extended_horizons;
  std::vector<double> extended_ratios;
  bool decreasing = false;
  bool vanishing = false;  // asymptotic length along <g> certified below 1e-6
};

struct SeparationCertificate {
  enum class Witness { kFacetSpan, kSublinearityFailure };
  std::vector<SupportFunctional> functionals;
  std::size_t rank = 0;
  std::size_t m = 0;  // abelianization rank
  bool separated = false;
  Witness witness = Witness::kFacetSpan;
  // Rows of an invertible m x m submatrix of the functional matrix.
  std::vector<std::size_t> invertible_rows;
  std::optional<SublinearityReport> sublinearity;
};

std::string to_string(SeparationCertificate::Witness w);

SublinearityReport sublinearity_witness(const LengthFunction& length, const Element& g,
                                        std::int64_t horizon = 10000,
                                        double tolerance = 1e-6);

// Word lengths and norm restrictions get a facet-span certificate; explicit
// tables and formulas need a sublinearity witness along `direction`
// (default: the first standard generator) or throw kUndecidable.
SeparationCertificate separation_certificate(const LengthFunction& length,
                                             std::optional<Element> direction = std::nullopt,
                                             std::int64_t horizon = 10000);

}  // namespace horocp
