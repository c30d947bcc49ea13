// Copyright 2026 The socnav Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not
// use this file except in compliance with the License. You may obtain a copy of
// the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations under
// the License.

#ifndef SOCNAV_SOCNAV_H_
#define SOCNAV_SOCNAV_H_

#include <stddef.h>

#if defined(_WIN32)
#define SOCNAV_API __declspec(dllexport)
#else
#define SOCNAV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum socnav_status {
  SOCNAV_OK = 0,
  SOCNAV_ERR_PARSE = 1,
  SOCNAV_ERR_VALIDATION = 2,
  SOCNAV_ERR_NOT_FOUND = 3,
  SOCNAV_ERR_INVALID_ARGUMENT = 4,
  SOCNAV_ERR_INCONSISTENT = 5,
  SOCNAV_ERR_IO = 6,
  SOCNAV_ERR_INTERNAL = 7,
} socnav_status;

typedef struct socnav_engine socnav_engine;

/* Static description of a status code. */
SOCNAV_API const char* socnav_status_string(socnav_status status);

/* Message of the last failure on the calling thread; "" if none. Valid until
 * the next call on that thread. */
SOCNAV_API const char* socnav_last_error(void);

/* Releases any string returned through an out parameter. NULL is ignored. */
SOCNAV_API void socnav_free(char* text);

/* Generates a community document from a scenario spec (JSON; "{}" for the
 * defaults). */
SOCNAV_API socnav_status socnav_generate(const char* spec_json, char** out_document);

/* Loads and validates a community document; the result is in canonical form. */
SOCNAV_API socnav_status socnav_canonicalize(const char* document, char** out_document);

/* config_json may be NULL for the defaults. */
SOCNAV_API socnav_status socnav_engine_create(const char* document, const char* config_json,
                                              socnav_engine** out_engine);
SOCNAV_API socnav_status socnav_engine_create_from_file(const char* path,
                                                        const char* config_json,
                                                        socnav_engine** out_engine);
SOCNAV_API void socnav_engine_destroy(socnav_engine* engine);

/* One API request. Returns SOCNAV_OK whenever a response was produced; the
 * HTTP status and JSON body describe the outcome. body may be NULL. */
SOCNAV_API socnav_status socnav_engine_call(socnav_engine* engine, const char* method,
                                            const char* path, const char* body,
                                            int* out_http_status, char** out_body);

/* Runs a probe trajectory (CSV "t,x,y,z") against the scene of the given
 * context (JSON, or NULL for no recommendation) and returns CSV records. */
SOCNAV_API socnav_status socnav_engine_simulate(socnav_engine* engine, const char* context_json,
                                                const char* trajectory_csv, char** out_csv);

/* Current community document. */
SOCNAV_API socnav_status socnav_engine_snapshot(socnav_engine* engine, char** out_document);

/* Binds the HTTP listener (port 0 picks one) and reports the bound port. */
SOCNAV_API socnav_status socnav_engine_bind(socnav_engine* engine, const char* host, int port,
                                            int* out_port);
/* Blocks serving requests until socnav_engine_stop. */
SOCNAV_API socnav_status socnav_engine_listen(socnav_engine* engine);
SOCNAV_API void socnav_engine_stop(socnav_engine* engine);

#ifdef __cplusplus
}
#endif

#endif  // SOCNAV_SOCNAV_H_
