#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "gabor/asymptotics.hpp"
#include "gabor/domain.hpp"
#include "gabor/lattice.hpp"
#include "gabor/window.hpp"

namespace gabor {

struct RunConfig {
    std::string domain_path;
    std::vector<int> Rs{4, 6, 8, 12, 16, 24, 32};
    std::string method = "double_sum";  // double_sum | eigen | both
    double tol = 1e-6;
    double radius = 0.0;  // 0: choose from tol
    std::string out_dir = ".";
    Mat2 lattice_basis;
    bool has_lattice = false;

    std::shared_ptr<nlohmann::json> doc;
};

RunConfig parse_config(const std::string& path);
std::string serialize_config(const RunConfig& c);

Window window_from_json(const nlohmann::json& j);
nlohmann::json window_to_json(const Window& w);
LatticeDomain domain_from_json(const nlohmann::json& j);
LatticeDomain load_domain(const std::string& path);

// CSV/SVG writers: '.' decimal, %.17g floats, bit-stable output.
std::string format_double(double x);
void write_file(const std::string& path, const std::string& content);
std::string convergence_csv(const ConvergenceReport& rep);
std::string convergence_svg(const ConvergenceReport& rep);

}  // namespace gabor
