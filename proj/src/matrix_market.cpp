#include "decay/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "decay/error.hpp"

namespace decay {
namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank_or_comment(const std::string& line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string::npos || line[first] == '%';
}

}  // namespace

SparseHermitianMatrix read_matrix_market(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty Matrix Market input");

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket") throw ParseError("missing %%MatrixMarket banner");
    object = lower(object);
    format = lower(format);
    field = lower(field);
    symmetry = lower(symmetry);
    if (object != "matrix" || format != "coordinate") throw ParseError("only 'matrix coordinate' files are supported");
    if (field != "real" && field != "integer" && field != "complex" && field != "pattern") {
        throw ParseError("unsupported field '" + field + "'");
    }
    if (symmetry != "symmetric" && symmetry != "hermitian") {
        throw ParseError("matrix must be declared symmetric or hermitian, got '" + symmetry + "'");
    }
    if (symmetry == "symmetric" && field == "complex") {
        throw ParseError("complex symmetric (non-Hermitian) matrices are not supported");
    }

    while (std::getline(in, line) && blank_or_comment(line)) {
    }
    if (!in && line.empty()) throw ParseError("missing size line");
    std::size_t rows = 0, cols = 0, nnz = 0;
    {
        std::istringstream size_line(line);
        if (!(size_line >> rows >> cols >> nnz)) throw ParseError("malformed size line '" + line + "'");
    }
    if (rows != cols || rows == 0) throw ParseError("matrix must be square and nonempty");

    std::vector<SparseHermitianMatrix::Triplet> entries;
    entries.reserve(nnz);
    while (entries.size() < nnz && std::getline(in, line)) {
        if (blank_or_comment(line)) continue;
        std::istringstream ls(line);
        std::size_t i = 0, j = 0;
        double re = 1.0, im = 0.0;
        if (!(ls >> i >> j)) throw ParseError("malformed entry line '" + line + "'");
        if (field != "pattern" && !(ls >> re)) throw ParseError("missing value on line '" + line + "'");
        if (field == "complex" && !(ls >> im)) throw ParseError("missing imaginary part on line '" + line + "'");
        if (i < 1 || j < 1 || i > rows || j > cols) throw ParseError("entry index out of range: '" + line + "'");
        if (i == j && im != 0.0) throw ParseError("diagonal entry with nonzero imaginary part: '" + line + "'");
        entries.push_back({i - 1, j - 1, Complex(re, im)});
    }
    if (entries.size() != nnz) throw ParseError("file ends before all " + std::to_string(nnz) + " entries");

    try {
        return SparseHermitianMatrix::from_triangle(rows, entries);
    } catch (const InvalidArgument& e) {
        throw ParseError(e.what());
    }
}

SparseHermitianMatrix load_matrix_market(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    return read_matrix_market(in);
}

}  // namespace decay
