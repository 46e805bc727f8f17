#include "test_support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ruij::test {

std::vector<std::vector<std::string>> read_table(const std::string& name)
{
    std::ifstream in(std::string(RUIJ_TEST_DATA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing reference file " + name);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::vector<std::string> row;
        for (std::string tok; ss >> tok;) row.push_back(tok);
        rows.push_back(row);
    }
    return rows;
}

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

} // namespace ruij::test
