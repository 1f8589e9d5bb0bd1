/*
 * Copyright 2026 The skewflow Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SKEWFLOW_SKEWFLOW_H
#define SKEWFLOW_SKEWFLOW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define SF_API __attribute__((visibility("default")))
#else
#define SF_API
#endif

/* Every entry point returns a status; on failure the message is available
   from sf_last_error() on the calling thread. Rationals cross this boundary
   as "num/den" strings. Strings returned through char** are owned by the
   caller and released with sf_string_free. */
typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_NOT_DIVISIBLE = 1,
  SF_ERR_INDEX_OUT_OF_BUDGET = 2,
  SF_ERR_DEGREE_BUDGET = 3,
  SF_ERR_SINGULAR = 4,
  SF_ERR_TRUNCATION = 5,
  SF_ERR_INVALID_ARGUMENT = 6,
  SF_ERR_PARSE = 7,
  SF_ERR_NULL_ARGUMENT = 8,
  SF_ERR_INTERNAL = 9
} sf_status;

typedef struct sf_moments sf_moments;
typedef struct sf_family sf_family;
typedef struct sf_chain sf_chain;
typedef struct sf_grid sf_grid;
typedef struct sf_report sf_report;

SF_API const char* sf_version(void);
SF_API const char* sf_status_name(sf_status status);
/* Message of the last failure on this thread; "" after a success. */
SF_API const char* sf_last_error(void);
SF_API void sf_string_free(char* text);

/* Moment tables. kind is "orthogonal" or "symplectic". */
SF_API sf_status sf_moments_random(uint64_t seed, size_t max_index, unsigned bound,
                                   sf_moments** out);
SF_API sf_status sf_moments_discrete(const char* kind, const char* const* nodes,
                                     const char* const* weights, size_t count, size_t max_index,
                                     sf_moments** out);
SF_API sf_status sf_moments_shift(const sf_moments* m, const char* c, sf_moments** out);
SF_API sf_status sf_moments_scale(const sf_moments* m, const char* factor, sf_moments** out);
SF_API sf_status sf_moments_max_index(const sf_moments* m, size_t* out);
SF_API sf_status sf_moments_entry(const sf_moments* m, size_t i, size_t j, char** out);
SF_API sf_status sf_moments_from_json(const char* text, sf_moments** out);
SF_API sf_status sf_moments_to_json(const sf_moments* m, char** out);
SF_API void sf_moments_free(sf_moments* m);

/* SOP families: Pfaffian formulas, or the linear-solve oracle. */
SF_API sf_status sf_family_build(const sf_moments* m, size_t pairs, sf_family** out);
SF_API sf_status sf_family_oracle(const sf_moments* m, size_t pairs, sf_family** out);
SF_API sf_status sf_family_pairs(const sf_family* f, size_t* out);
/* JSON array of coefficients, constant term first. */
SF_API sf_status sf_family_poly(const sf_family* f, size_t k, char** out);
SF_API sf_status sf_family_norm(const sf_family* f, size_t n, char** out);
SF_API sf_status sf_family_from_json(const char* text, sf_family** out);
SF_API sf_status sf_family_to_json(const sf_family* f, char** out);
SF_API void sf_family_free(sf_family* f);

/* Iterated skew-Christoffel transformation at fixed lambda. */
SF_API sf_status sf_chain_build(const sf_moments* m, size_t pairs, const char* lambda,
                                size_t length, sf_chain** out);
SF_API sf_status sf_chain_length(const sf_chain* c, size_t* out);
SF_API sf_status sf_chain_from_json(const char* text, sf_chain** out);
SF_API sf_status sf_chain_to_json(const sf_chain* c, char** out);
SF_API void sf_chain_free(sf_chain* c);

/* Tau/sigma grid on n <= pairs + 1, s <= s_extent, t <= t_extent. */
SF_API sf_status sf_grid_build(const sf_moments* m, const char* mu, const char* lambda,
                               size_t pairs, size_t s_extent, size_t t_extent, sf_grid** out);
/* Same grid with sigma replaced by tau and sigmahat by tauhat. */
SF_API sf_status sf_grid_degenerate(const sf_grid* g, sf_grid** out);
SF_API sf_status sf_grid_from_json(const char* text, sf_grid** out);
SF_API sf_status sf_grid_to_json(const sf_grid* g, char** out);
SF_API void sf_grid_free(sf_grid* g);

/* Verification suites. Each report carries the provenance of its inputs. */
SF_API sf_status sf_verify_orthogonality(const sf_family* f, const sf_moments* m,
                                         sf_report** out);
SF_API sf_status sf_verify_christoffel(const sf_family* f, const sf_moments* m,
                                       const char* lambda, sf_report** out);
SF_API sf_status sf_verify_geronimus(const sf_family* f, const sf_moments* m,
                                     const char* lambda, sf_report** out);
/* size 0 selects the largest truncation, 2N+2. */
SF_API sf_status sf_verify_dlax(const sf_chain* c, size_t size, sf_report** out);
SF_API sf_status sf_verify_kernel(const sf_family* f, const sf_moments* m, size_t n,
                                  const char* y, sf_report** out);
/* suite: dckp, slax, dpfl, edckp, edlax, edpfl or crosscheck. */
SF_API sf_status sf_verify_grid(const sf_grid* g, const char* suite, sf_report** out);

SF_API sf_status sf_report_counts(const sf_report* r, size_t* checks, size_t* failed);
SF_API sf_status sf_report_passed(const sf_report* r, int* out);
SF_API sf_status sf_report_to_json(const sf_report* r, char** out);
SF_API void sf_report_free(sf_report* r);

#ifdef __cplusplus
}
#endif

#endif
