/* Copyright 2026 The hecke-structure authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 */

/* C interface to the Hecke structure library.
 *
 * A request names a subcommand and an action (for example "hecke" / "assoc"), carries an
 * optional JSON configuration or preset name, and string options.  Executing it yields a
 * result holding a JSON report and a status code.  All strings are UTF-8 and NUL-terminated;
 * strings returned by the library stay valid until the owning handle is freed.
 */

#ifndef HECKE_HECKE_H_
#define HECKE_HECKE_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HK_API __declspec(dllexport)
#else
#define HK_API __attribute__((visibility("default")))
#endif

typedef enum hk_status {
    HK_OK = 0,            /* all checks passed */
    HK_CHECK_FAILED = 1,  /* a check failed or the computation hit a limit */
    HK_CONFIG_ERROR = 2,  /* malformed configuration, unknown subcommand or bad argument */
    HK_INVALID_ARGUMENT = 3 /* NULL handle or string passed to this interface */
} hk_status;

typedef struct hk_request hk_request;
typedef struct hk_result hk_result;

HK_API const char* hk_version(void);

/* Newline-separated list of built-in configuration names. */
HK_API const char* hk_preset_names(void);

HK_API hk_request* hk_request_new(const char* command, const char* action);
HK_API void hk_request_free(hk_request* req);

/* Sets a named option such as "x", "maxlen" or "group".  Setting a key twice replaces it. */
HK_API hk_status hk_request_set(hk_request* req, const char* key, const char* value);
HK_API hk_status hk_request_set_config_text(hk_request* req, const char* json_text);
HK_API hk_status hk_request_set_preset(hk_request* req, const char* name);
HK_API hk_status hk_request_set_threads(hk_request* req, int threads);
HK_API hk_status hk_request_set_cutoff(hk_request* req, int cutoff);

/* Never returns NULL for a non-NULL request; failures are reported through the result. */
HK_API hk_result* hk_execute(const hk_request* req);
HK_API void hk_result_free(hk_result* res);

HK_API hk_status hk_result_status(const hk_result* res);
HK_API const char* hk_result_json(const hk_result* res);
/* Empty string when the run succeeded or only a check failed. */
HK_API const char* hk_result_error(const hk_result* res);

#ifdef __cplusplus
}
#endif

#endif /* HECKE_HECKE_H_ */
