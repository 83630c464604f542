#ifndef ORBITKIT_TOOLS_IO_HPP
#define ORBITKIT_TOOLS_IO_HPP

#include <string>
#include <vector>

#include "orbitkit/matrix.hpp"

#include "json.hpp"

namespace orbitkit::io {

/// Load the matrix file schema {"n": int, "re": [[...]], "im": [[...]]}.
/// Throws DomainError naming the offending field; the Hermitian tolerance
/// is enforced at load with the max deviation reported.
HermitianMatrix load_hermitian(const std::string& path);

/// Matrix file JSON for a Hermitian (or general complex) matrix.
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Comma-separated reals ("0,1,2.5") -> vector. Throws DomainError on any
/// unparseable token.
std::vector<double> parse_csv_reals(const std::string& text);

/// printf %.17g (lossless round trip for doubles).
std::string format_real(double x);

} // namespace orbitkit::io

#endif
