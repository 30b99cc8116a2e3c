/* Copyright (c) 2026 The OrphanSim developers
 * Distributed under the MIT software license, see the accompanying
 * file COPYING or http://www.opensource.org/licenses/mit-license.php. */

#ifndef ORPHANSIM_H
#define ORPHANSIM_H

/* C interface to the orphan transaction relay simulator.
 *
 * Usage pattern:
 *
 *   orphansim_scenario_t* sc = NULL;
 *   if (orphansim_scenario_open("scenario.json", &sc) != ORPHANSIM_OK) {
 *       fprintf(stderr, "%s\n", orphansim_last_error());
 *       return 1;
 *   }
 *   orphansim_scenario_set_seed(sc, 42);
 *   int rc = orphansim_run(sc, 1);
 *   orphansim_scenario_close(sc);
 *
 * All functions returning `int` return an orphansim_status value. On any
 * non-zero status the thread-local message from orphansim_last_error()
 * describes the failure. Handles are not thread-safe; each thread must use
 * its own. NULL handle or NULL required-pointer arguments yield
 * ORPHANSIM_ERR_CONFIG.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ORPHANSIM_API __declspec(dllexport)
#else
#define ORPHANSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum orphansim_status {
    ORPHANSIM_OK = 0,          /* success */
    ORPHANSIM_ERR_CONFIG = 1,  /* bad input: file, flag, or scenario value */
    ORPHANSIM_ERR_RUNTIME = 2, /* simulation failed an internal invariant */
    ORPHANSIM_ERR_SCHEMA = 3   /* versioned artifact has wrong schema */
} orphansim_status;

/* Opaque scenario handle: parsed configuration plus run options. */
typedef struct orphansim_scenario orphansim_scenario_t;

/* Library version string, e.g. "0.1.0". Never NULL. */
ORPHANSIM_API const char* orphansim_version(void);

/* Message for the most recent failure on the calling thread. Never NULL;
 * empty string when no failure has occurred. The pointer stays valid until
 * the next failing call on the same thread. */
ORPHANSIM_API const char* orphansim_last_error(void);

/* Parse a scenario from a JSON file and return a new handle in *out. */
ORPHANSIM_API int orphansim_scenario_open(const char* path, orphansim_scenario_t** out);

/* Parse a scenario from an in-memory JSON string. */
ORPHANSIM_API int orphansim_scenario_parse(const char* json_text, orphansim_scenario_t** out);

/* Override the scenario's base seed. */
ORPHANSIM_API int orphansim_scenario_set_seed(orphansim_scenario_t* scenario, uint64_t seed);

/* Override the scenario's output directory. */
ORPHANSIM_API int orphansim_scenario_set_out_dir(orphansim_scenario_t* scenario, const char* dir);

/* Release a handle. NULL is a no-op. */
ORPHANSIM_API void orphansim_scenario_close(orphansim_scenario_t* scenario);

/* Execute the scenario's replicates at its configured pool options, writing
 * per-run artifacts and a merged CSV under its output directory. `jobs` is
 * the number of runs to execute concurrently; 0 means 1. */
ORPHANSIM_API int orphansim_run(orphansim_scenario_t* scenario, unsigned jobs);

/* Execute the scenario's pool size sweep (replicates x sweep values) and the
 * sweep summary CSVs. A scenario without a sweep section sweeps the default
 * pool size ladder {20, 50, 100, 500, 1000}. */
ORPHANSIM_API int orphansim_sweep(orphansim_scenario_t* scenario, unsigned jobs);

/* Build the scenario's synthetic workload without simulating and write it as
 * one JSON object per line to `out_path`. */
ORPHANSIM_API int orphansim_workload_export(orphansim_scenario_t* scenario, const char* out_path);

/* Aggregate previously written report.json files into one comparison CSV.
 * `report_paths` is an array of `count` file paths, count >= 2. */
ORPHANSIM_API int orphansim_compare(const char* const* report_paths, size_t count,
                                    const char* out_csv_path);

#ifdef __cplusplus
}
#endif

#endif /* ORPHANSIM_H */
