#pragma once

// JSON forms of the toolkit's values. Readers throw InputError on malformed
// documents; writers produce ordered objects so output is byte-stable.

#include "sparse/christol.hpp"
#include "sparse/sp_sets.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace sparse {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

Json rational_to_json(const Rational& x);  // "num/den" or "num"
Rational rational_from_json(const Json& j);

/// {p, m, digits} with digits low degree first.
Json field_element_to_json(const FieldElement& x);
/// Accepts {p, m, digits}, a bare digit array, or an integer (prime-field image), in `field`.
FieldElement field_element_from_json(const Json& j, const GaloisField& field);
const GaloisField& field_from_json(const Json& j);  // reads p and m (m defaults to 1)

/// Symbol array with the string "radix" for the radix point.
Json word_to_json(const Word& w);
/// Symbol array or text ("10.1").
Word word_from_json(const Json& j, std::uint32_t base);

/// {alphabet, states, initial, transitions, outputs, direction}
Json dfao_to_json(const Dfao& m);
Dfao dfao_from_json(const Json& j);

Json sp_set_to_json(const SpSet& s);
SpSet sp_set_from_json(const Json& j);

Json form_to_json(const SimpleSparseForm& f);
SimpleSparseForm form_from_json(const Json& j);
Json closed_form_to_json(const ClosedForm& c);

/// {p, m, precision, terms: [[num, den, digits]]}
Json series_to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j);
/// {p, m, window: {hi, depth}, terms: [[num, den, digits]]}; exact series omit the window.
Json gen_series_to_json(const GenSeries& g);
GenSeries gen_series_from_json(const Json& j);

/// {p, m, terms: [[i, j, coeff]]}
Json equation_to_json(const AlgebraicEquation& eq);
AlgebraicEquation equation_from_json(const Json& j);
/// A coefficient array, or {seed: [...]}.
std::vector<FieldElement> seed_from_json(const Json& j, const GaloisField& field);

/// {p, m, steps: [{op, args, ...}]}
Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

/// {a, b, p, m, dfao}
QuasiAutomatic quasi_from_json(const Json& j);

Json parse_json_text(const std::string& text);

}  // namespace sparse
