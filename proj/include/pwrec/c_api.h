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
/*
 * C interface to libpwrec. Objects are opaque handles; every call returns a
 * pwr_status, and on failure pwr_last_error() describes the problem for the
 * calling thread. Strings handed out by the library are released with
 * pwr_free().
 */
#ifndef PWREC_C_API_H_
#define PWREC_C_API_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PWR_API __declspec(dllexport)
#else
#define PWR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pwr_status {
  PWR_OK = 0,
  PWR_ERR_INVALID_ARGUMENT = 1,
  PWR_ERR_DEGENERATE_INPUT = 2,
  PWR_ERR_DUPLICATE_COORDINATE = 3,
  PWR_ERR_COLLISION_EXHAUSTED = 4,
  PWR_ERR_MALFORMED = 5,
  PWR_ERR_UNKNOWN_LOGIN = 6,
  PWR_ERR_DUPLICATE_LOGIN = 7,
  PWR_ERR_LOCKED = 8,
  PWR_ERR_EXPIRED = 9,
  PWR_ERR_REPLAYED = 10,
  PWR_ERR_IO = 11,
  PWR_ERR_PROTOCOL = 12,
  PWR_ERR_INTERNAL = 99
} pwr_status;

typedef struct pwr_local_blob pwr_local_blob;
typedef struct pwr_client pwr_client;
typedef struct pwr_server pwr_server;

/* Password shape. alphabet == NULL selects printable ASCII (0x20..0x7e). */
typedef struct pwr_spec {
  const char* alphabet;
  size_t n;
  size_t t;
} pwr_spec;

PWR_API const char* pwr_last_error(void);
PWR_API const char* pwr_status_name(pwr_status status);
PWR_API void pwr_free(void* p);

/* --- local recovery ------------------------------------------------------ */

/* params: "toy" or "real" (also the small test groups "toy23", "toy2027"). */
PWR_API pwr_status pwr_local_register(const pwr_spec* spec, const char* params,
                                      const char* password, pwr_local_blob** out);
PWR_API pwr_status pwr_local_blob_save(const pwr_local_blob* blob, const char* path);
PWR_API pwr_status pwr_local_blob_load(const char* path, pwr_local_blob** out);
PWR_API void pwr_local_blob_free(pwr_local_blob* blob);
/* *recovered is NULL when the guess is too far from the password. */
PWR_API pwr_status pwr_local_recover(const pwr_local_blob* blob, const char* guess,
                                     char** recovered);

/* --- client -------------------------------------------------------------- */

/* direction: 0 sent, 1 received. json is only valid during the call. */
typedef void (*pwr_transcript_fn)(int direction, const char* json, void* user);

PWR_API pwr_status pwr_client_connect(const char* host, uint16_t port, const uint8_t* psk,
                                      size_t psk_len, pwr_client** out);
PWR_API void pwr_client_free(pwr_client* client);
PWR_API pwr_status pwr_client_set_transcript(pwr_client* client, pwr_transcript_fn fn,
                                             void* user);
PWR_API pwr_status pwr_client_set_paillier_bits(pwr_client* client, unsigned bits);
/* mode: "hash", "cr", "simple" or "substring". */
PWR_API pwr_status pwr_client_register(pwr_client* client, const char* mode,
                                       const pwr_spec* spec, const char* login,
                                       const char* password);
/* mode: "hash" or "cr". */
PWR_API pwr_status pwr_client_login(pwr_client* client, const char* mode, const char* login,
                                    const char* password, int* accepted);
PWR_API pwr_status pwr_client_recover(pwr_client* client, const char* mode,
                                      const pwr_spec* spec, const char* login,
                                      const char* guess, char** recovered);

/* --- server -------------------------------------------------------------- */

typedef struct pwr_server_config {
  const char* host;        /* NULL: 127.0.0.1 */
  uint16_t port;           /* 0: any free port */
  const char* store_path;  /* NULL or "": in memory */
  const char* mode;        /* NULL: "toy" */
  size_t max_attempts;     /* 0: 10 */
  uint32_t lockout_seconds; /* 0: 900 */
  const uint8_t* psk;
  size_t psk_len;
} pwr_server_config;

PWR_API pwr_status pwr_server_create(const pwr_server_config* config, pwr_server** out);
PWR_API pwr_status pwr_server_start(pwr_server* server);
PWR_API uint16_t pwr_server_port(const pwr_server* server);
PWR_API pwr_status pwr_server_stop(pwr_server* server);
PWR_API void pwr_server_free(pwr_server* server);

/* --- self test ----------------------------------------------------------- */

PWR_API pwr_status pwr_selftest(size_t trials, uint64_t seed, char** report_json,
                                int* passed);

#ifdef __cplusplus
}
#endif

#endif  /* PWREC_C_API_H_ */
