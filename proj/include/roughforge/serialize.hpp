#pragma once

#include <iosfwd>
#include <string>

#include "roughforge/action.hpp"
#include "roughforge/rp_construct.hpp"

#include "json.hpp"

namespace roughforge {

using Json = nlohmann::ordered_json;

/// Doubles print as shortest-exact decimal strings ("%.17g") so that
/// serialized output is byte-deterministic and round-trips bit-exactly.
std::string double_str(double v);
double parse_double(const std::string& s);

/// Functional as an object mapping basis-element names to scalar strings.
/// The unit coefficient is keyed "1" over forests and "" over words, and is
/// omitted when zero.
Json dual_to_json(const DualElement<double>& f);
Json dual_to_json(const DualElement<Rational>& f);
DualElement<double> dual_from_json(BasisPtr basis, const Json& j);

Json path_to_json(const DyadicGroupPath& x);
DyadicGroupPath path_from_json(const Json& j);

Json family_to_json(const HolderFamily& g);
HolderFamily family_from_json(const Json& j);

Json report_to_json(const HolderReport& rep);

ConstantCharacter character_from_json(const Json& j);

/// CSV with header "t,<letter>,...": exactly 2^M + 1 rows whose t column
/// must be exactly the dyadics k 2^{-M}. Exponents are attached afterwards.
SampledPath sampled_path_from_csv(std::istream& in);
void sampled_path_to_csv(const SampledPath& p, std::ostream& out);

std::string basis_kind_name(TruncatedBasis::Kind k, bool anisotropic);

}  // namespace roughforge
