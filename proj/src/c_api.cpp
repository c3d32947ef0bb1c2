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
#include "pwrec/c_api.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include "pwrec/client.hpp"
#include "pwrec/error.hpp"
#include "pwrec/harness.hpp"
#include "pwrec/server.hpp"

struct pwr_local_blob {
  pwrec::LocalBlob blob;
};

struct pwr_client {
  std::unique_ptr<pwrec::Client> client;
};

struct pwr_server {
  std::unique_ptr<pwrec::Server> server;
};

namespace {

thread_local std::string g_last_error;

pwr_status fail(pwr_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, translating exceptions into status codes.
template <typename F>
pwr_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const pwrec::Error& e) {
    return fail(static_cast<pwr_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PWR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PWR_ERR_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pwrec::PasswordSpec to_spec(const pwr_spec* spec) {
  if (spec == nullptr) throw pwrec::Error(pwrec::Errc::kInvalidArgument, "spec is null");
  pwrec::PasswordSpec s;
  if (spec->alphabet != nullptr) s.alphabet = spec->alphabet;
  s.n = spec->n;
  s.t = spec->t;
  s.validate();
  return s;
}

void require_args(std::initializer_list<const void*> ptrs) {
  for (const void* p : ptrs) {
    if (p == nullptr) throw pwrec::Error(pwrec::Errc::kInvalidArgument, "null argument");
  }
}

}  // namespace

extern "C" {

const char* pwr_last_error(void) { return g_last_error.c_str(); }

const char* pwr_status_name(pwr_status status) {
  switch (status) {
    case PWR_OK: return "Ok";
    case PWR_ERR_INTERNAL: return "Internal";
    default: break;
  }
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= static_cast<int>(pwrec::Errc::kProtocol)) {
    return pwrec::errc_name(static_cast<pwrec::Errc>(code));
  }
  return "Unknown";
}

void pwr_free(void* p) { std::free(p); }

pwr_status pwr_local_register(const pwr_spec* spec, const char* params, const char* password,
                              pwr_local_blob** out) {
  return guarded([&] {
    require_args({params, password, out});
    const pwrec::PasswordSpec s = to_spec(spec);
    pwrec::SystemRng rng;
    const pwrec::Field f = pwrec::named_params(params).field();
    auto blob = std::make_unique<pwr_local_blob>(pwr_local_blob{
        pwrec::local_register(s, f, password, rng)});
    *out = blob.release();
    return PWR_OK;
  });
}

pwr_status pwr_local_blob_save(const pwr_local_blob* blob, const char* path) {
  return guarded([&] {
    require_args({blob, path});
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw pwrec::Error(pwrec::Errc::kIo, std::string("cannot write ") + path);
    f << pwrec::encode(blob->blob).dump() << "\n";
    f.close();
    if (!f) throw pwrec::Error(pwrec::Errc::kIo, std::string("write failed: ") + path);
    return PWR_OK;
  });
}

pwr_status pwr_local_blob_load(const char* path, pwr_local_blob** out) {
  return guarded([&] {
    require_args({path, out});
    std::ifstream f(path, std::ios::binary);
    if (!f) throw pwrec::Error(pwrec::Errc::kIo, std::string("cannot read ") + path);
    pwrec::Json j;
    try {
      j = pwrec::Json::parse(f);
    } catch (const pwrec::Json::exception& e) {
      throw pwrec::Error(pwrec::Errc::kMalformed, e.what());
    }
    auto blob = std::make_unique<pwr_local_blob>(pwr_local_blob{pwrec::decode_local_blob(j)});
    *out = blob.release();
    return PWR_OK;
  });
}

void pwr_local_blob_free(pwr_local_blob* blob) { delete blob; }

pwr_status pwr_local_recover(const pwr_local_blob* blob, const char* guess, char** recovered) {
  return guarded([&] {
    require_args({blob, guess, recovered});
    blob->blob.spec.check_password(guess);
    const auto r = pwrec::local_recover(blob->blob, guess);
    *recovered = r.password ? dup_string(*r.password) : nullptr;
    return PWR_OK;
  });
}

pwr_status pwr_client_connect(const char* host, uint16_t port, const uint8_t* psk,
                              size_t psk_len, pwr_client** out) {
  return guarded([&] {
    require_args({host, out});
    std::optional<pwrec::Bytes> key;
    if (psk != nullptr && psk_len > 0) key = pwrec::Bytes(psk, psk + psk_len);
    auto c = std::make_unique<pwr_client>(
        pwr_client{std::make_unique<pwrec::Client>(host, port, std::move(key))});
    *out = c.release();
    return PWR_OK;
  });
}

void pwr_client_free(pwr_client* client) { delete client; }

pwr_status pwr_client_set_transcript(pwr_client* client, pwr_transcript_fn fn, void* user) {
  return guarded([&] {
    require_args({client});
    if (fn == nullptr) {
      client->client->set_transcript(nullptr);
    } else {
      client->client->set_transcript([fn, user](pwrec::Direction d, const pwrec::Json& j) {
        fn(d == pwrec::Direction::kSent ? 0 : 1, j.dump().c_str(), user);
      });
    }
    return PWR_OK;
  });
}

pwr_status pwr_client_set_paillier_bits(pwr_client* client, unsigned bits) {
  return guarded([&] {
    require_args({client});
    client->client->set_paillier_bits(bits);
    return PWR_OK;
  });
}

pwr_status pwr_client_register(pwr_client* client, const char* mode, const pwr_spec* spec,
                               const char* login, const char* password) {
  return guarded([&] {
    require_args({client, mode, login, password});
    const pwrec::PasswordSpec s = to_spec(spec);
    const std::string m = mode;
    pwrec::Client& c = *client->client;
    if (m == "hash") {
      c.register_hash(s, login, password);
    } else if (m == "cr") {
      c.register_cr(s, login, password);
    } else if (m == "simple") {
      c.register_simple(s, login, password);
    } else if (m == "substring") {
      c.register_substring(s, login, password);
    } else {
      throw pwrec::Error(pwrec::Errc::kInvalidArgument, "unknown mode: " + m);
    }
    return PWR_OK;
  });
}

pwr_status pwr_client_login(pwr_client* client, const char* mode, const char* login,
                            const char* password, int* accepted) {
  return guarded([&] {
    require_args({client, mode, login, password, accepted});
    const std::string m = mode;
    if (m == "hash") {
      *accepted = client->client->login_hash(login, password) ? 1 : 0;
    } else if (m == "cr") {
      *accepted = client->client->login_cr(login, password) ? 1 : 0;
    } else {
      throw pwrec::Error(pwrec::Errc::kInvalidArgument, "login mode must be hash or cr");
    }
    return PWR_OK;
  });
}

pwr_status pwr_client_recover(pwr_client* client, const char* mode, const pwr_spec* spec,
                              const char* login, const char* guess, char** recovered) {
  return guarded([&] {
    require_args({client, mode, login, guess, recovered});
    const std::string m = mode;
    pwrec::Client& c = *client->client;
    std::optional<std::string> out;
    if (m == "simple") {
      out = c.recover_simple(login, guess);
    } else {
      const pwrec::PasswordSpec s = to_spec(spec);
      s.check_password(guess);
      if (m == "hash") {
        out = c.recover_hash(s, login, guess).password;
      } else if (m == "cr") {
        out = c.recover_cr(s, login, guess).password;
      } else if (m == "substring") {
        out = c.recover_substring(s, login, guess);
      } else {
        throw pwrec::Error(pwrec::Errc::kInvalidArgument, "unknown mode: " + m);
      }
    }
    *recovered = out ? dup_string(*out) : nullptr;
    return PWR_OK;
  });
}

pwr_status pwr_server_create(const pwr_server_config* config, pwr_server** out) {
  return guarded([&] {
    require_args({config, out});
    pwrec::ServerConfig cfg;
    if (config->host != nullptr) cfg.host = config->host;
    cfg.port = config->port;
    if (config->store_path != nullptr) cfg.store_path = config->store_path;
    if (config->mode != nullptr) cfg.mode = config->mode;
    if (cfg.mode != "toy" && cfg.mode != "real") {
      throw pwrec::Error(pwrec::Errc::kInvalidArgument, "mode must be toy or real");
    }
    if (config->max_attempts != 0) cfg.policy.max_attempts = config->max_attempts;
    if (config->lockout_seconds != 0) cfg.policy.lockout = std::chrono::seconds(config->lockout_seconds);
    if (config->psk != nullptr && config->psk_len > 0) {
      cfg.psk = pwrec::Bytes(config->psk, config->psk + config->psk_len);
    }
    auto s = std::make_unique<pwr_server>(
        pwr_server{std::make_unique<pwrec::Server>(std::move(cfg))});
    *out = s.release();
    return PWR_OK;
  });
}

pwr_status pwr_server_start(pwr_server* server) {
  return guarded([&] {
    require_args({server});
    server->server->start();
    return PWR_OK;
  });
}

uint16_t pwr_server_port(const pwr_server* server) {
  return server == nullptr ? 0 : server->server->port();
}

pwr_status pwr_server_stop(pwr_server* server) {
  return guarded([&] {
    require_args({server});
    server->server->stop();
    return PWR_OK;
  });
}

void pwr_server_free(pwr_server* server) { delete server; }

pwr_status pwr_selftest(size_t trials, uint64_t seed, char** report_json, int* passed) {
  return guarded([&] {
    require_args({report_json, passed});
    pwrec::SelftestConfig cfg;
    if (trials != 0) cfg.trials = trials;
    if (seed != 0) cfg.seed = seed;
    const pwrec::Json report = pwrec::run_selftest(cfg);
    *passed = report.at("pass").get<bool>() ? 1 : 0;
    *report_json = dup_string(report.dump(2));
    return PWR_OK;
  });
}

}  // extern "C"
