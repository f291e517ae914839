// Times the catalog sweep kernels on the serial reference path against the
// OpenMP path and checks that both produce identical reports.

#include <chrono>
#include <iomanip>
#include <iostream>

#include "tordec/factorization.hpp"
#include "tordec/json_io.hpp"
#include "tordec/parallel.hpp"

using namespace tordec;

namespace {

struct BenchCase {
  std::string name;
  TheoryHandle theory;
  Catalog catalog;
};

double time_once(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int coslice_bound = 12, mset_bound = 4;
  if (argc > 1) coslice_bound = std::atoi(argv[1]);
  if (argc > 2) mset_bound = std::atoi(argv[2]);

  std::vector<BenchCase> cases;
  cases.push_back({"coslice m=2 bound " + std::to_string(coslice_bound),
                   TheoryHandle::make("coslice", 2),
                   generate_catalog(Kind::Coslice, coslice_bound, 2)});
  cases.push_back({"mset bound " + std::to_string(mset_bound), TheoryHandle::make("mset"),
                   generate_catalog(Kind::MSet, mset_bound)});
  cases.push_back(
      {"heyting bound 8", TheoryHandle::make("heyting"), generate_catalog(Kind::Heyting, 8)});

  std::cout << std::left << std::setw(26) << "sweep" << std::right << std::setw(12) << "serial"
            << std::setw(12) << "openmp" << std::setw(10) << "speedup" << "  equal\n";

  for (BenchCase& c : cases) {
    std::string serial_report, openmp_report;
    auto run_sweep = [&](par::Mode mode, std::string* report) {
      par::mode() = mode;
      HomCache homs;
      homs.precompute(c.catalog.instances);
      Json j = Json::object();
      for (const char* tag : {"axioms", "S", "M"})
        j[tag] = condition_to_json(check_condition(c.theory, tag, c.catalog, homs));
      SystemReport sys = verify_factorization_system(c.theory, c.catalog, homs);
      j["system_ok"] = sys.ok;
      j["homs_factored"] = sys.homs_factored;
      *report = dump_canonical(j);
    };
    double ts = time_once([&] { run_sweep(par::Mode::Serial, &serial_report); });
    double tp = time_once([&] { run_sweep(par::Mode::OpenMP, &openmp_report); });
    bool equal = serial_report == openmp_report;
    std::cout << std::left << std::setw(26) << c.name << std::right << std::fixed
              << std::setprecision(3) << std::setw(11) << ts << "s" << std::setw(11) << tp << "s"
              << std::setprecision(2) << std::setw(9) << (tp > 0 ? ts / tp : 0.0) << "x  "
              << (equal ? "yes" : "NO") << "\n";
    if (!equal) return 1;
  }
  return 0;
}
