#pragma once

// Numeric CSV tables. Headers are mandatory; values are written with 12
// significant digits.
//
// Schemas emitted by the CLI:
//   ensemble     event_index,mean_eta,std_eta,mean_zbar
//   tags         event_index,tag,belief,weight,mean_eta
//   ode          t,z,x,eta
//   sweep        lambda,predicted_eta,simulated_eta
//   equilibrium  k,lambda_bar,lambda_star,sender_value,ic_residual,
//                plausibility_gap,psi,phi,rho,curvature,belief,weight
//                (one row per support atom)

#include <iosfwd>
#include <string>
#include <vector>

namespace bp2 {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of `name` in the header; throws InvalidArgument if absent.
  std::size_t column(const std::string& name) const;
};

std::string format_number(double v);

void write_csv(std::ostream& os, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

/// Throws InvalidArgument on ragged rows or non-numeric cells.
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

}  // namespace bp2
