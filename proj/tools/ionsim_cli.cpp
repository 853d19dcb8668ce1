#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "ionsim/errors.hpp"
#include "ionsim/scenario.hpp"

// exit codes: 0 success/help, 2 configuration or precondition problem,
// 3 numerical integrity failure, 1 anything unexpected
int main(int argc, char** argv) {
  using namespace ionsim;
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const ScenarioConfig cfg = parse_config(args);
    const ScenarioResult res = run_scenario(cfg);
    std::printf("wrote=%s\n", cfg.out.c_str());
    std::printf("report=%s.report.txt\n", cfg.out.c_str());
    if (res.convergence_ran)
      std::printf("convergence sup_diff=%.3e pass=%d\n", res.convergence.sup_diff,
                  res.convergence.pass ? 1 : 0);
    for (const auto& c : res.comparisons)
      std::printf("compare %s vs %s: sup=%.6e rms=%.6e at t=%.6g\n", c.model_a.c_str(),
                  c.model_b.c_str(), c.sup_norm, c.rms, c.t_at_max_diff);
    for (const auto& w : res.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
    return 0;
  } catch (const help_requested& h) {
    std::fputs(h.text.c_str(), stdout);
    return 0;
  } catch (const config_error& e) {
    std::fprintf(stderr, "error.kind=config\nerror.msg=%s\n", e.what());
    return 2;
  } catch (const precondition_error& e) {
    std::fprintf(stderr, "error.kind=precondition\nerror.msg=%s\n", e.what());
    return 2;
  } catch (const numerical_error& e) {
    std::fprintf(stderr, "error.kind=numerical\nerror.msg=%s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error.kind=internal\nerror.msg=%s\n", e.what());
    return 1;
  }
}
