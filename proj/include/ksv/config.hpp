#pragma once

// Run configuration, orchestration and artifact writers.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ksv/circular.hpp"
#include "ksv/ebt.hpp"
#include "ksv/verification.hpp"

namespace ksv {

enum class RunMode { Exact, Thin, Circular, All };

std::string to_string(RunMode m);
RunMode parse_run_mode(const std::string& text);

enum class LoadOrigin { Centroid, User };

struct SectionConfig {
  std::string label;  ///< e.g. "circle(1)" or "fourier"
  FourierCurveSpec spec;
  bool circle = false;  ///< canonical circle x = c + R0 (cos t, sin t)
  double radius = 0.0;
};

struct Gates {
  double equilibrium = 1e-6;
  double resultants = 1e-7;
  double seams = 1e-8;
};

struct OutputConfig {
  std::string dir = "ksv-out";
  bool csv = true;
  bool json = true;
};

struct RunConfig {
  SectionConfig section;
  double E = 0.0, nu = 0.0, h = 0.0;
  double length = 1.0;
  ResultantLoads loads;
  LoadOrigin origin = LoadOrigin::Centroid;
  RunMode mode = RunMode::All;
  std::size_t grid_s = 512;
  std::size_t grid_z = 5;
  PsiVariant psi_variant = PsiVariant::Corollary;
  OutputConfig output;
  Gates gates;
};

/// JSON document to a validated RunConfig. Unknown keys raise ParseError
/// naming the key; bad values raise ValidationError naming the field.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Re-checks every field; call again after command-line overrides.
void validate_config(const RunConfig& cfg);

/// M_c = M_user - c x R; R unchanged.
ResultantLoads transform_loads_to_centroid(const ResultantLoads& loads, const Vec2& centroid);
/// Inverse transport: M_user = M_c + c x R.
ResultantLoads transform_loads_to_user(const ResultantLoads& loads, const Vec2& centroid);

struct RunResult {
  int exit_status = 0;
  std::vector<std::string> failed_gates;
  std::vector<std::string> artifacts;
  std::string summary;  ///< serialized summary document
};

/// Builds the section, runs the requested solvers and the verification suite,
/// writes field tables and the summary. Exit status is 1 iff a gate fails.
RunResult run_case(const RunConfig& cfg);

/// Section geometry only, as a summary document.
std::string section_summary(const RunConfig& cfg);

struct TableRow {
  double s = 0.0, z = 0.0;
  Vec3 u = Vec3::Zero();
  StressState stress;
};

inline constexpr const char* kFieldTableHeader = "# ksv-field-table v1";

void write_field_table(std::ostream& os, const std::vector<TableRow>& rows);
std::vector<TableRow> read_field_table(std::istream& is);

/// Re-certifies a saved field table against the configured section, material
/// and loads: the displacement is refit as a polynomial in z at every node.
RunResult verify_table(const RunConfig& cfg, const std::string& table_path);

}  // namespace ksv
