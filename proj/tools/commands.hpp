#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace contracts::cli {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kRuntime = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  int precision_bits = 0;  // 0: each construction's own default
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

// key=value parameters; unknown keys are rejected once the command is done reading.
class Params {
 public:
  Params() = default;
  explicit Params(const std::vector<std::string>& items);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string str(const std::string& key, const std::string& fallback);
  std::string required(const std::string& key);
  long integer(const std::string& key, long fallback);
  bool flag(const std::string& key, bool fallback);
  void finish() const;

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> used_;
};

int cmd_construct(const GlobalOptions& g, const std::string& name, Params params);
int cmd_solve(const GlobalOptions& g, const std::string& instance, const std::string& fptas_eps,
              const std::string& method, const std::string& table_path);
int cmd_verify(const GlobalOptions& g, const std::string& instance, const std::vector<std::string>& checks,
               Params params);
int cmd_experiment(const GlobalOptions& g, const std::string& name, Params params);

}  // namespace contracts::cli
