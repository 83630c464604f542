#include "io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "orbitkit/errors.hpp"

namespace orbitkit::io {

using nlohmann::json;

namespace {

std::vector<std::vector<double>> read_square_array(const json& j, const std::string& field,
                                                   int n) {
    if (!j.contains(field)) throw DomainError("matrix file: missing field '" + field + "'");
    const json& arr = j.at(field);
    if (!arr.is_array() || static_cast<int>(arr.size()) != n)
        throw DomainError("matrix file: field '" + field + "' must be an n x n array");
    std::vector<std::vector<double>> out(n);
    for (int i = 0; i < n; ++i) {
        const json& row = arr.at(i);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw DomainError("matrix file: field '" + field + "' row " + std::to_string(i) +
                              " has the wrong length");
        out[i].resize(n);
        for (int k = 0; k < n; ++k) {
            if (!row.at(k).is_number())
                throw DomainError("matrix file: field '" + field + "' entry (" +
                                  std::to_string(i) + "," + std::to_string(k) +
                                  ") is not a number");
            out[i][k] = row.at(k).get<double>();
        }
    }
    return out;
}

} // namespace

HermitianMatrix load_hermitian(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("matrix file: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw DomainError(std::string("matrix file: invalid JSON: ") + e.what());
    }
    if (!j.contains("n") || !j.at("n").is_number_integer())
        throw DomainError("matrix file: missing integer field 'n'");
    const int n = j.at("n").get<int>();
    if (n < 1) throw DomainError("matrix file: field 'n' must be >= 1");
    const auto re = read_square_array(j, "re", n);
    const auto im = read_square_array(j, "im", n);

    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m.at(i, k) = cplx(re[i][k], im[i][k]);
    try {
        return HermitianMatrix(std::move(m));
    } catch (const DomainError& e) {
        throw DomainError(std::string("matrix file: ") + e.what());
    }
}

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    const int n = m.dim();
    json re = json::array(), im = json::array();
    for (int i = 0; i < n; ++i) {
        json rrow = json::array(), irow = json::array();
        for (int k = 0; k < n; ++k) {
            rrow.push_back(m.at(i, k).real());
            irow.push_back(m.at(i, k).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

std::vector<double> parse_csv_reals(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            size_t pos = 0;
            const double v = std::stod(token, &pos);
            while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos])))
                ++pos;
            if (pos != token.size()) throw std::invalid_argument(token);
            if (!std::isfinite(v)) throw std::invalid_argument(token);
            out.push_back(v);
        } catch (const std::exception&) {
            throw DomainError("cannot parse real value '" + token + "'");
        }
    }
    if (out.empty()) throw DomainError("empty value list");
    return out;
}

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace orbitkit::io
