#include "mmdf/material_file.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mmdf {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::string cleaned = line.substr(0, line.find('#'));
  for (char& c : cleaned) {
    if (c == ',' || c == '\t' || c == '\r') c = ' ';
  }
  std::istringstream is(cleaned);
  std::vector<std::string> fields;
  for (std::string f; is >> f;) fields.push_back(f);
  return fields;
}

double to_number(const std::string& text, int line_no) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("material file line " + std::to_string(line_no) + ": '" + text + "' is not a number");
  }
  return value;
}

}  // namespace

MaterialDatabase parse_material_database(std::istream& in) {
  std::vector<MaterialModel> models;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    const auto where = "material file line " + std::to_string(line_no) + ": ";
    if (fields.size() < 2) throw ConfigError(where + "expected '<id> <variant> <parameters...>'");

    const double id = to_number(fields[0], line_no);
    if (id != static_cast<double>(models.size() + 1)) {
      throw ConfigError(where + "ids must be contiguous from 1 (expected " + std::to_string(models.size() + 1) + ")");
    }
    const std::string& tag = fields[1];
    std::vector<double> p;
    for (std::size_t i = 2; i < fields.size(); ++i) p.push_back(to_number(fields[i], line_no));

    auto expect = [&](std::size_t n) {
      if (p.size() != n) {
        throw ConfigError(where + tag + " takes " + std::to_string(n) + " parameters, got " + std::to_string(p.size()));
      }
    };
    MaterialModel m;
    if (tag == "lossless_dielectric") {
      expect(1);
      m = LosslessDielectric{p[0]};
    } else if (tag == "magnetic_power_law") {
      expect(4);
      m = LossyMagneticPowerLaw{p[0], p[1], p[2], p[3]};
    } else if (tag == "dielectric_power_law") {
      expect(4);
      m = LossyDielectricPowerLaw{p[0], p[1], p[2], p[3]};
    } else if (tag == "magnetic_relaxation") {
      expect(2);
      m = RelaxationMagnetic{p[0], p[1]};
    } else {
      throw ConfigError(where + "unknown material variant '" + tag + "'");
    }
    try {
      check_material(m);
    } catch (const DomainError& e) {
      throw ConfigError(where + e.what());
    }
    models.push_back(m);
  }
  if (models.empty()) throw ConfigError("material file defines no materials");
  return MaterialDatabase(std::move(models));
}

MaterialDatabase load_material_database(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material file '" + path.string() + "'");
  return parse_material_database(in);
}

void write_material_database(std::ostream& out, const MaterialDatabase& db) {
  out << "# id variant parameters\n" << std::setprecision(17);
  int id = 1;
  for (const auto& mat : db.materials()) {
    out << id++ << ' ' << variant_tag(mat);
    std::visit(
        [&out](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, LosslessDielectric>) {
            out << ' ' << m.eps_real;
          } else if constexpr (std::is_same_v<T, LossyMagneticPowerLaw>) {
            out << ' ' << m.mu1 << ' ' << m.alpha << ' ' << m.mu1_imag << ' ' << m.beta;
          } else if constexpr (std::is_same_v<T, LossyDielectricPowerLaw>) {
            out << ' ' << m.eps1 << ' ' << m.alpha << ' ' << m.eps1_imag << ' ' << m.beta;
          } else {
            out << ' ' << m.mu_m << ' ' << m.f_m;
          }
        },
        mat);
    out << '\n';
  }
}

}  // namespace mmdf
