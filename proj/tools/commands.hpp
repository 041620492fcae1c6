#pragma once

#include <optional>
#include <string>

#include "mackeylab/json_io.hpp"

namespace mackeylab::cli {

struct Options {
  std::string group;               // file or catalogue name
  std::string system = "full";     // "full" or file
  std::string from, via, to;       // objects: "G/3", "3" or "*"
  std::size_t first = 0, second = 0;
  std::string module, target;      // module files
  std::string tower = "2adic";     // file or "2adic"
  std::string thread = "trivial";  // file, "whole" or "trivial"
  std::size_t depth = 2;
  std::size_t max_rank = 5000;
  bool verify = false;
};

struct Report {
  Json json;
  std::string text;
  int exit_code = 0;
};

Report validate(const Options& o);
Report lattice(const Options& o);
Report marks(const Options& o);
Report hom(const Options& o);
Report compose(const Options& o);
Report burnside(const Options& o);
Report resolve(const Options& o);
Report ext(const Options& o);
Report bredon_ext(const Options& o);
Report ind(const Options& o);
Report res(const Options& o);
Report adjoint(const Options& o);
Report tower_colim(const Options& o);
Report tower_eval(const Options& o);
Report compare_dims(const Options& o);

}  // namespace mackeylab::cli
