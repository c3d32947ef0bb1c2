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
// Exercises the shared library through its C header only.
#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "pwrec/c_api.h"

namespace {

namespace fs = std::filesystem;

struct ServerGuard {
  pwr_server* s = nullptr;
  ~ServerGuard() {
    if (s) {
      pwr_server_stop(s);
      pwr_server_free(s);
    }
  }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  pwr_free(s);
  return out;
}

TEST(CApi, LocalBlobRoundTrip) {
  const fs::path file = fs::temp_directory_path() / "pwrec-c-api.blob";
  const pwr_spec spec{nullptr, 8, 5};
  pwr_local_blob* blob = nullptr;
  ASSERT_EQ(pwr_local_register(&spec, "toy", "Tr0ub4d&", &blob), PWR_OK);
  ASSERT_EQ(pwr_local_blob_save(blob, file.c_str()), PWR_OK);
  pwr_local_blob_free(blob);

  pwr_local_blob* loaded = nullptr;
  ASSERT_EQ(pwr_local_blob_load(file.c_str(), &loaded), PWR_OK);
  char* out = nullptr;
  ASSERT_EQ(pwr_local_recover(loaded, "Tr0uXXd&", &out), PWR_OK);
  EXPECT_EQ(take(out), "Tr0ub4d&");
  ASSERT_EQ(pwr_local_recover(loaded, "TXoXbXd&", &out), PWR_OK);
  EXPECT_EQ(out, nullptr);
  EXPECT_EQ(pwr_local_recover(loaded, "short", &out), PWR_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(pwr_last_error()), "");
  pwr_local_blob_free(loaded);
  fs::remove(file);
}

TEST(CApi, ArgumentErrors) {
  const pwr_spec spec{nullptr, 8, 5};
  pwr_local_blob* blob = nullptr;
  EXPECT_EQ(pwr_local_register(&spec, "nope", "Tr0ub4d&", &blob), PWR_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(pwr_local_register(nullptr, "toy", "Tr0ub4d&", &blob), PWR_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(pwr_local_blob_load("/nonexistent/pwrec.blob", &blob), PWR_ERR_IO);
  EXPECT_STREQ(pwr_status_name(PWR_ERR_LOCKED), "Locked");
}

TEST(CApi, ServerAndClient) {
  ServerGuard server;
  pwr_server_config cfg{};
  cfg.max_attempts = 2;
  ASSERT_EQ(pwr_server_create(&cfg, &server.s), PWR_OK);
  ASSERT_EQ(pwr_server_start(server.s), PWR_OK);

  pwr_client* c = nullptr;
  ASSERT_EQ(pwr_client_connect("127.0.0.1", pwr_server_port(server.s), nullptr, 0, &c), PWR_OK);
  int frames = 0;
  pwr_client_set_transcript(
      c, [](int, const char* json, void* user) {
        if (json && json[0] == '{') ++*static_cast<int*>(user);
      },
      &frames);
  const pwr_spec spec{nullptr, 8, 5};
  ASSERT_EQ(pwr_client_register(c, "cr", &spec, "alice", "c0rrectH"), PWR_OK);
  EXPECT_EQ(pwr_client_register(c, "cr", &spec, "alice", "c0rrectH"), PWR_ERR_DUPLICATE_LOGIN);
  int accepted = 0;
  ASSERT_EQ(pwr_client_login(c, "cr", "alice", "c0rrectH", &accepted), PWR_OK);
  EXPECT_EQ(accepted, 1);
  char* out = nullptr;
  ASSERT_EQ(pwr_client_recover(c, "cr", &spec, "alice", "cXrXXXtH", &out), PWR_OK);
  EXPECT_EQ(out, nullptr);
  ASSERT_EQ(pwr_client_recover(c, "cr", &spec, "alice", "c0rrXXtH", &out), PWR_OK);
  EXPECT_EQ(take(out), "c0rrectH");
  EXPECT_EQ(pwr_client_recover(c, "cr", &spec, "alice", "c0rrectH", &out), PWR_ERR_LOCKED);
  EXPECT_GT(frames, 0);
  pwr_client_free(c);
}

// Runs the command line tool and captures stdout.
int run(const std::string& args, std::string* out, const std::string& stdin_text = "") {
  const std::string cmd = "printf '%s\\n' '" + stdin_text + "' | " + PWREC_CLI + " " + args +
                          " 2>/dev/null";
  FILE* f = ::popen(cmd.c_str(), "r");
  if (!f) return -1;
  char buf[256];
  out->clear();
  while (std::size_t k = std::fread(buf, 1, sizeof buf, f)) out->append(buf, k);
  const int status = ::pclose(f);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, LocalRecovery) {
  const fs::path blob = fs::temp_directory_path() / "pwrec-cli.blob";
  std::string out;
  ASSERT_EQ(run("local-register --blob " + blob.string() + " --password 'Tr0ub4d&'", &out), 0);
  EXPECT_EQ(run("local-recover --blob " + blob.string() + " --password 'Tr0uXXd&'", &out), 0);
  EXPECT_EQ(out, "Tr0ub4d&\n");
  EXPECT_EQ(run("local-recover --blob " + blob.string() + " --password 'TXoXbXd&'", &out), 1);
  EXPECT_EQ(out, "");
  // Guess on stdin when no terminal is attached.
  EXPECT_EQ(run("local-recover --blob " + blob.string(), &out, "Tr0uXXd&"), 0);
  EXPECT_EQ(out, "Tr0ub4d&\n");
  EXPECT_EQ(run("local-recover --blob /nonexistent --password x", &out), 2);
  fs::remove(blob);
}

TEST(Cli, AgainstServer) {
  ServerGuard server;
  pwr_server_config cfg{};
  ASSERT_EQ(pwr_server_create(&cfg, &server.s), PWR_OK);
  ASSERT_EQ(pwr_server_start(server.s), PWR_OK);
  const std::string at = " --server 127.0.0.1:" + std::to_string(pwr_server_port(server.s));
  std::string out;
  ASSERT_EQ(run("register --mode hash --login bob --password 'b4tt3ry!'" + at, &out), 0);
  EXPECT_EQ(run("login --mode hash --login bob --password 'b4tt3ry!'" + at, &out), 0);
  EXPECT_EQ(run("login --mode hash --login bob --password 'b4tt3ry?'" + at, &out), 1);
  EXPECT_EQ(run("recover --mode hash --login bob --password 'bXttXry!'" + at, &out), 0);
  EXPECT_EQ(out, "b4tt3ry!\n");
  EXPECT_EQ(run("recover --mode hash --login bob --password 'bXtXeXy!'" + at, &out), 1);
  EXPECT_EQ(out, "");
  EXPECT_EQ(run("recover --mode hash --login nobody --password 'bXttXry!'" + at, &out), 2);
}

}  // namespace
