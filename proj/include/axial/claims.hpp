#pragma once

#include "axial/exact_poly.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace axial {

// Polynomials in t over Q[a] from the weighted blow-up of alpha^a.
ParamPoly poly_p();   // t [4t^8 + 8t^6 - (a^2-24)t^4 - (a^2-20)t^2 + a^2 - 56]
ParamPoly poly_ra();  // r_a
ParamPoly poly_ta();  // t_a
RationalPoly claimed_res_p_ra();
RationalPoly claimed_res_p_ta();

struct Claim {
  std::string id;
  std::string status;  // verified | failed | convention-sign | paper-note
  std::string lhs, rhs, detail;
  std::vector<std::string> samples;
};

struct ClaimReport {
  std::vector<Claim> claims;
  int count(const std::string& status) const;
  nlohmann::json to_json() const;
};

std::vector<std::string> claim_ids();

// Runs every claim (or the ones listed in `only`) on the given parameter samples.
// Samples must avoid +-6, +-8 exactly (irrational boundaries cannot be hit by rationals).
ClaimReport verify_claims(const std::vector<Rational>& samples, const std::vector<std::string>& only = {});
std::vector<Rational> default_claim_samples();

}  // namespace axial
