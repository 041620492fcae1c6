#include <CLI11.hpp>
#include <functional>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "mackeylab/error.hpp"

using namespace mackeylab;

int main(int argc, char** argv) {
  CLI::App app{"Mackey functors, Bredon modules and their homological algebra over finite groups"};
  app.require_subcommand(1);
  cli::Options o;
  bool json = false;

  using Command = std::function<cli::Report(const cli::Options&)>;
  std::vector<std::pair<CLI::App*, Command>> commands;

  auto add = [&](const char* name, const char* help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--group", o.group, "group file or catalogue name (c4, s3, d4, q8, a4, ...)");
    sub->add_option("--system", o.system, "system file, or full")->capture_default_str();
    sub->add_option("--depth", o.depth, "resolution depth, top Ext degree, or tower depth")->capture_default_str();
    sub->add_option("--max-rank", o.max_rank, "rank ceiling for free covers")->capture_default_str();
    sub->add_flag("--json", json, "machine-readable output");
    sub->add_flag("--verify", o.verify, "re-check against a brute-force computation");
    commands.emplace_back(sub, std::move(fn));
    return sub;
  };

  add("validate", "check the Mackey system axioms", cli::validate);
  add("lattice", "subgroup lattice and conjugacy classes", cli::lattice);
  add("marks", "table of marks", cli::marks);
  auto* hom = add("hom", "basis of a Mackey hom group", cli::hom);
  hom->add_option("--from", o.from, "source object, e.g. G/3")->required();
  hom->add_option("--to", o.to, "target object, or * for the terminal object")->required();
  auto* comp = add("compose", "compose two basis spans", cli::compose);
  comp->add_option("--from", o.from)->required();
  comp->add_option("--via", o.via)->required();
  comp->add_option("--to", o.to)->required();
  comp->add_option("--first", o.first, "basis index in [via, to]");
  comp->add_option("--second", o.second, "basis index in [from, via]");
  add("burnside", "values of the Burnside functor", cli::burnside);
  add("resolve", "free resolution of a Mackey module (default B)", cli::resolve)->add_option("--module", o.module);
  auto* ext = add("ext", "Ext(M, N) over the Mackey category (defaults B)", cli::ext);
  ext->add_option("--module", o.module, "first argument");
  ext->add_option("--target", o.target, "second argument");
  auto* bext = add("bredon-ext", "Bredon cohomology with coefficients (default Z)", cli::bredon_ext);
  bext->add_option("--module", o.module, "coefficient module");
  add("ind", "induce a Bredon module (default Z)", cli::ind)->add_option("--module", o.module);
  add("res", "restrict a Mackey module (default B)", cli::res)->add_option("--module", o.module);
  auto* adj = add("adjoint", "check Hom(ind T, M) = Hom(T, res M)", cli::adjoint);
  adj->add_option("--module", o.module, "Bredon module T");
  adj->add_option("--target", o.target, "Mackey module M");
  for (auto [name, fn] : std::vector<std::pair<const char*, Command>>{{"tower-colim", cli::tower_colim}, {"tower-eval", cli::tower_eval}}) {
    auto* t = add(name, name == std::string("tower-colim") ? "Burnside colimit along a thread" : "resolutions of B evaluated along a thread", fn);
    t->add_option("--tower", o.tower, "tower file, or 2adic")->capture_default_str();
    t->add_option("--thread", o.thread, "thread file, whole or trivial")->capture_default_str();
  }
  add("compare-dims", "Mackey and Bredon Ext side by side", cli::compare_dims)->add_option("--module", o.module);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    try {
      cli::Report r = fn(o);
      if (json)
        std::cout << r.json.dump(2) << "\n";
      else
        std::cout << r.text;
      return r.exit_code;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return exit_code(e.kind());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}
