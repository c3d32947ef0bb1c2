// Copyright 2026 The pwrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// pwrec: command-line front end. Talks to the library only through the C API.

#include <pthread.h>
#include <signal.h>
#include <termios.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pwrec/c_api.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefused = 1;
constexpr int kExitError = 2;

struct Options {
  std::string server = "127.0.0.1:7468";
  std::string mode;
  std::string login;
  std::optional<std::string> password;
  std::size_t n = 8;
  std::size_t t = 5;
  std::optional<std::string> alphabet;
  bool real = false;
  std::string blob_path;
  std::string psk_file;
  unsigned paillier_bits = 2048;

  // serve
  std::string listen = "127.0.0.1:7468";
  std::string store_path = "pwrec-store.jsonl";
  std::string group = "toy";
  std::size_t max_attempts = 10;
  std::uint32_t lockout_seconds = 900;
  std::string port_file;

  // selftest
  std::size_t trials = 10000;
  std::uint64_t seed = 20260101;
};

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

// Refusals by the server (lockout) count as refusals, not errors.
void check(pwr_status s) {
  if (s == PWR_OK) return;
  const std::string msg = std::string(pwr_status_name(s)) + ": " + pwr_last_error();
  throw CliError(s == PWR_ERR_LOCKED ? kExitRefused : kExitError, msg);
}

std::pair<std::string, std::uint16_t> split_address(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos) throw CliError(kExitError, "address must be host:port");
  const unsigned long port = std::stoul(addr.substr(colon + 1));
  if (port > 65535) throw CliError(kExitError, "port out of range");
  return {addr.substr(0, colon), static_cast<std::uint16_t>(port)};
}

std::vector<std::uint8_t> read_psk(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliError(kExitError, "cannot read " + path);
  std::vector<std::uint8_t> key((std::istreambuf_iterator<char>(f)), {});
  if (key.empty()) throw CliError(kExitError, "empty key file " + path);
  return key;
}

// Reads a line from the terminal with echo off, or from stdin when it is
// not a terminal.
std::string prompt_password(const char* prompt) {
  FILE* tty = std::fopen("/dev/tty", "r+");
  if (tty == nullptr || !isatty(STDIN_FILENO)) {
    if (tty != nullptr) std::fclose(tty);
    std::string line;
    if (!std::getline(std::cin, line)) throw CliError(kExitError, "no password given");
    return line;
  }
  std::fputs(prompt, tty);
  std::fflush(tty);
  termios old{};
  tcgetattr(fileno(tty), &old);
  termios quiet = old;
  quiet.c_lflag &= ~static_cast<tcflag_t>(ECHO);
  tcsetattr(fileno(tty), TCSAFLUSH, &quiet);
  char buf[1024];
  const bool ok = std::fgets(buf, sizeof buf, tty) != nullptr;
  tcsetattr(fileno(tty), TCSAFLUSH, &old);
  std::fputs("\n", tty);
  std::fclose(tty);
  if (!ok) throw CliError(kExitError, "no password given");
  std::string line(buf);
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
  return line;
}

std::string password_of(const Options& o, const char* prompt) {
  return o.password ? *o.password : prompt_password(prompt);
}

pwr_spec spec_of(const Options& o) {
  return pwr_spec{o.alphabet ? o.alphabet->c_str() : nullptr, o.n, o.t};
}

struct ClientHandle {
  pwr_client* c = nullptr;
  ~ClientHandle() { pwr_client_free(c); }
};

void connect(const Options& o, ClientHandle& h) {
  const auto [host, port] = split_address(o.server);
  const auto psk = read_psk(o.psk_file);
  check(pwr_client_connect(host.c_str(), port, psk.empty() ? nullptr : psk.data(), psk.size(),
                           &h.c));
  check(pwr_client_set_paillier_bits(h.c, o.paillier_bits));
}

// Prints a recovered password, or reports the refusal.
int emit(char* recovered) {
  if (recovered == nullptr) {
    std::cerr << "not recovered\n";
    return kExitRefused;
  }
  std::cout << recovered << "\n";
  pwr_free(recovered);
  return kExitOk;
}

int cmd_register(const Options& o) {
  ClientHandle h;
  connect(o, h);
  const std::string pw = password_of(o, "password: ");
  const pwr_spec spec = spec_of(o);
  check(pwr_client_register(h.c, o.mode.c_str(), &spec, o.login.c_str(), pw.c_str()));
  std::cerr << "registered " << o.login << "\n";
  return kExitOk;
}

int cmd_login(const Options& o) {
  ClientHandle h;
  connect(o, h);
  const std::string pw = password_of(o, "password: ");
  int accepted = 0;
  check(pwr_client_login(h.c, o.mode.c_str(), o.login.c_str(), pw.c_str(), &accepted));
  std::cerr << (accepted ? "accepted" : "rejected") << "\n";
  return accepted ? kExitOk : kExitRefused;
}

int cmd_local_recover(const Options& o) {
  pwr_local_blob* blob = nullptr;
  check(pwr_local_blob_load(o.blob_path.c_str(), &blob));
  const std::string guess = password_of(o, "guess: ");
  char* out = nullptr;
  const pwr_status s = pwr_local_recover(blob, guess.c_str(), &out);
  pwr_local_blob_free(blob);
  check(s);
  return emit(out);
}

int cmd_recover(const Options& o) {
  if (o.mode == "local") return cmd_local_recover(o);
  ClientHandle h;
  connect(o, h);
  const std::string guess = password_of(o, "guess: ");
  const pwr_spec spec = spec_of(o);
  char* out = nullptr;
  check(pwr_client_recover(h.c, o.mode.c_str(), &spec, o.login.c_str(), guess.c_str(), &out));
  return emit(out);
}

int cmd_local_register(const Options& o) {
  const std::string pw = password_of(o, "password: ");
  const pwr_spec spec = spec_of(o);
  pwr_local_blob* blob = nullptr;
  check(pwr_local_register(&spec, o.real ? "real" : "toy", pw.c_str(), &blob));
  const pwr_status s = pwr_local_blob_save(blob, o.blob_path.c_str());
  pwr_local_blob_free(blob);
  check(s);
  std::cerr << "wrote " << o.blob_path << "\n";
  return kExitOk;
}

int cmd_serve(const Options& o) {
  // Block the shutdown signals before any thread starts; the main thread
  // then waits for them synchronously.
  sigset_t sigs;
  sigemptyset(&sigs);
  sigaddset(&sigs, SIGINT);
  sigaddset(&sigs, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &sigs, nullptr);

  const auto [host, port] = split_address(o.listen);
  const auto psk = read_psk(o.psk_file);
  pwr_server_config cfg{};
  cfg.host = host.c_str();
  cfg.port = port;
  cfg.store_path = o.store_path.c_str();
  cfg.mode = o.group.c_str();
  cfg.max_attempts = o.max_attempts;
  cfg.lockout_seconds = o.lockout_seconds;
  cfg.psk = psk.empty() ? nullptr : psk.data();
  cfg.psk_len = psk.size();

  pwr_server* server = nullptr;
  check(pwr_server_create(&cfg, &server));
  const pwr_status s = pwr_server_start(server);
  if (s != PWR_OK) {
    pwr_server_free(server);
    check(s);
  }
  const std::uint16_t bound = pwr_server_port(server);
  if (!o.port_file.empty()) {
    std::ofstream(o.port_file) << bound << "\n";
  }
  std::cerr << "listening on " << host << ":" << bound << "\n";
  int sig = 0;
  sigwait(&sigs, &sig);
  std::cerr << "shutting down\n";
  pwr_server_stop(server);
  pwr_server_free(server);
  return kExitOk;
}

int cmd_selftest(const Options& o) {
  char* report = nullptr;
  int passed = 0;
  check(pwr_selftest(o.trials, o.seed, &report, &passed));
  std::cout << report << "\n";
  // Human summary on stderr, one line per check.
  const auto parsed = nlohmann::json::parse(report);
  pwr_free(report);
  for (const auto& c : parsed.at("checks")) {
    std::cerr << (c.at("pass").get<bool>() ? "ok    " : "FAIL  ") << c.at("name").get<std::string>();
    if (c.contains("estimates")) {
      for (const auto& e : c["estimates"]) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "  %s %+.4f (hw %.4f)",
                      e.at("distinguisher").get<std::string>().c_str(),
                      e.at("advantage").get<double>(), e.at("half_width").get<double>());
        std::cerr << buf;
      }
    }
    std::cerr << "\n";
  }
  std::cerr << "selftest " << (passed ? "passed" : "FAILED") << "\n";
  return passed ? kExitOk : kExitRefused;
}

void add_spec_flags(CLI::App* app, Options& o) {
  app->add_option("--n", o.n, "password length")->capture_default_str();
  app->add_option("--t", o.t, "matching characters needed for recovery")->capture_default_str();
  app->add_option("--alphabet", o.alphabet, "password alphabet (default: printable ASCII)");
}

void add_client_flags(CLI::App* app, Options& o) {
  app->add_option("--server", o.server, "server address host:port")->capture_default_str();
  app->add_option("--psk-file", o.psk_file, "pre-shared frame MAC key");
  app->add_option("--login", o.login, "account name")->required();
  app->add_option("--password", o.password, "password or guess (prompted if omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Password recovery from partially correct guesses"};
  app.require_subcommand(1);

  auto* reg = app.add_subcommand("register", "register an account with a server");
  add_client_flags(reg, o);
  add_spec_flags(reg, o);
  reg->add_option("--mode", o.mode, "hash | cr | simple | substring")
      ->required()
      ->check(CLI::IsMember({"hash", "cr", "simple", "substring"}));

  auto* login = app.add_subcommand("login", "log in with a password");
  add_client_flags(login, o);
  login->add_option("--mode", o.mode, "hash | cr")->required()->check(CLI::IsMember({"hash", "cr"}));

  auto* rec = app.add_subcommand("recover", "recover a password from a close guess");
  add_spec_flags(rec, o);
  rec->add_option("--server", o.server, "server address host:port")->capture_default_str();
  rec->add_option("--psk-file", o.psk_file, "pre-shared frame MAC key");
  rec->add_option("--login", o.login, "account name");
  rec->add_option("--password", o.password, "guess (prompted if omitted)");
  rec->add_option("--blob", o.blob_path, "blob file for --mode local");
  rec->add_option("--paillier-bits", o.paillier_bits, "client modulus size for substring mode")
      ->capture_default_str();
  rec->add_option("--mode", o.mode, "hash | cr | simple | substring | local")
      ->required()
      ->check(CLI::IsMember({"hash", "cr", "simple", "substring", "local"}));

  auto* lreg = app.add_subcommand("local-register", "write a local recovery blob");
  add_spec_flags(lreg, o);
  lreg->add_option("--password", o.password, "password (prompted if omitted)");
  lreg->add_option("--blob", o.blob_path, "output file")->required();
  lreg->add_flag("--toy,!--real", "512-bit group (default) or the 2048-bit group")
      ->each([&](const std::string& v) { o.real = v == "-1"; });

  auto* lrec = app.add_subcommand("local-recover", "recover from a local blob");
  lrec->add_option("--password", o.password, "guess (prompted if omitted)");
  lrec->add_option("--blob", o.blob_path, "blob file")->required();

  auto* serve = app.add_subcommand("serve", "run the recovery service");
  serve->add_option("--listen", o.listen, "listen address host:port")->capture_default_str();
  serve->add_option("--store", o.store_path, "account store file")->capture_default_str();
  serve->add_option("--mode", o.group, "toy | real")->check(CLI::IsMember({"toy", "real"}))
      ->capture_default_str();
  serve->add_option("--max-attempts", o.max_attempts, "recoveries per window")->capture_default_str();
  serve->add_option("--lockout-seconds", o.lockout_seconds, "window and lock duration")
      ->capture_default_str();
  serve->add_option("--psk-file", o.psk_file, "pre-shared frame MAC key");
  serve->add_option("--port-file", o.port_file, "write the bound port here");

  auto* st = app.add_subcommand("selftest", "run the statistical and complexity checks");
  st->add_option("--trials", o.trials, "trials per game")->capture_default_str();
  st->add_option("--seed", o.seed, "base seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*reg) return cmd_register(o);
    if (*login) return cmd_login(o);
    if (*rec) {
      if (o.mode == "local" ? o.blob_path.empty() : o.login.empty()) {
        throw CliError(kExitError, o.mode == "local" ? "--blob is required" : "--login is required");
      }
      return cmd_recover(o);
    }
    if (*lreg) return cmd_local_register(o);
    if (*lrec) return cmd_local_recover(o);
    if (*serve) return cmd_serve(o);
    if (*st) return cmd_selftest(o);
  } catch (const CliError& e) {
    std::cerr << "pwrec: " << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "pwrec: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
