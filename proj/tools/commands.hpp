#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "optrec/partition.hpp"
#include "optrec/recovery.hpp"
#include "optrec/simplex_geometry.hpp"

namespace optrec::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kParseError = 2, kDegenerate = 3, kShapeError = 4 };

/// Failure carrying the process exit code.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
  int code() const noexcept { return code_; }

 private:
  int code_;
};

struct GridSpec {
  enum class Mode { BoundingBox, SimplexBarycentric };
  Mode mode = Mode::BoundingBox;
  int resolution = 2;
  double margin = 0.0;
};

/// eps_bary from SIMPLEX_RECOVER_EPS, or the default when unset.
double eps_from_environment();

Simplex load_simplex(const std::string& path, double eps_bary);
Simplex parse_simplex(const std::string& text, double eps_bary);
InformationVector parse_information(const std::string& text, int expected_dim);
Vec parse_point(const std::string& text, int expected_dim);
/// "N[,margin]"; throws CliError(kShapeError) on a bad spec.
GridSpec parse_grid(const std::string& text, GridSpec::Mode mode);
/// Box grids run x0 slowest; barycentric grids follow the lattice order.
std::vector<Vec> grid_points(const Simplex& s, const GridSpec& spec);

std::string format_double(double v);

nlohmann::json cmd_analyze(const Simplex& s);
nlohmann::json cmd_project(const Simplex& s, const Vec& x);
void cmd_recover(const Simplex& s, const InformationVector& info, const std::vector<Vec>& points, std::ostream& out);
void cmd_errormap(const Simplex& s, const std::vector<Vec>& points, std::ostream& out);
/// Returns the report; report["pass"] decides the exit code.
nlohmann::json cmd_verify(const Simplex& s, std::uint64_t seed, int samples, DomainMode mode);

/// Full command line entry point. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace optrec::cli
