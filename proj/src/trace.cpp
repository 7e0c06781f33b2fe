#include "mvibench/trace.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mvibench {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_trace_csv(const std::string& path,
                     const std::vector<IterRecord>& trace) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open trace file for writing: " + path);
  }
  out << "n,tol,lambda,res_wy,psi,dist_sol,elapsed_ns\n";
  for (const IterRecord& r : trace) {
    out << r.n << ',' << format_g17(r.tol) << ',' << format_g17(r.lambda)
        << ',' << format_g17(r.res_wy) << ',';
    if (r.psi) out << format_g17(*r.psi);
    out << ',';
    if (r.dist_sol) out << format_g17(*r.dist_sol);
    out << ',' << r.elapsed_ns << '\n';
  }
  if (!out.good()) {
    throw std::runtime_error("write failure on trace file: " + path);
  }
}

}  // namespace mvibench
