#ifndef RECOUNT_H
#define RECOUNT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Mirrors the command line exit codes.
 */
typedef enum RecountStatus {
  RECOUNT_STATUS_OK = 0,
  RECOUNT_STATUS_INTERNAL = 1,
  RECOUNT_STATUS_INVALID_INPUT = 2,
  RECOUNT_STATUS_RESOURCE_LIMIT = 3,
  RECOUNT_STATUS_UNSUPPORTED = 4,
  RECOUNT_STATUS_NULL_POINTER = 5,
} RecountStatus;

/*
 Values for the `algo` argument of [`recount_solve_rec`].
 */
typedef enum RecountRecAlgo {
  RECOUNT_REC_ALGO_DP = 0,
  RECOUNT_REC_ALGO_BRUTE = 1,
  RECOUNT_REC_ALGO_UNWEIGHTED_PD = 2,
  RECOUNT_REC_ALGO_GREEDY = 3,
} RecountRecAlgo;

/*
 Values for the `algo` argument of [`recount_solve_man`].
 */
typedef enum RecountManAlgo {
  RECOUNT_MAN_ALGO_AUTO = 0,
  RECOUNT_MAN_ALGO_BRUTE = 1,
  RECOUNT_MAN_ALGO_PD_REG = 2,
  RECOUNT_MAN_ALGO_STATIC = 3,
  RECOUNT_MAN_ALGO_VERIFY = 4,
} RecountManAlgo;

typedef struct RecountInstance RecountInstance;

typedef struct RecountReport RecountReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Valid until
 the next call into this library on the same thread.
 */
const char *recount_last_error_message(void);

/*
 Parses a JSON instance.

 # Safety
 `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum RecountStatus recount_instance_parse(const char *text, struct RecountInstance **out);

/*
 # Safety
 `inst` must come from [`recount_instance_parse`] and not be used again.
 */
void recount_instance_free(struct RecountInstance *inst);

/*
 Number of candidates, 0 for a null handle.

 # Safety
 `inst` must be null or a live instance handle.
 */
size_t recount_instance_num_candidates(const struct RecountInstance *inst);

/*
 Number of districts, 0 for a null handle.

 # Safety
 `inst` must be null or a live instance handle.
 */
size_t recount_instance_num_districts(const struct RecountInstance *inst);

/*
 Tallies the instance's manipulation (if any) after recounting the
 `recount_len` districts in `recount`. Writes one score per candidate to
 `scores` (capacity `scores_len`, at least the candidate count) and the
 winner's index to `winner`.

 # Safety
 `recount` must hold `recount_len` entries (or be null with length 0),
 `scores` must hold `scores_len` entries and `winner` must be writable.
 */
enum RecountStatus recount_tally(const struct RecountInstance *inst,
                                 const size_t *recount,
                                 size_t recount_len,
                                 int64_t *scores,
                                 size_t scores_len,
                                 size_t *winner);

/*
 Runs a recount solver on the instance's manipulation. `target` is a
 candidate index, or -1 for the defender's best response. `budget` of -1
 uses the instance's defender budget. `algo` is a [`RecountRecAlgo`].

 # Safety
 `inst` must be a live instance handle and `out` writable.
 */
enum RecountStatus recount_solve_rec(const struct RecountInstance *inst,
                                     int64_t target,
                                     uint32_t algo,
                                     int64_t budget,
                                     struct RecountReport **out);

/*
 Runs an attacker solver. `algo` is a [`RecountManAlgo`].

 # Safety
 `inst` must be a live instance handle and `out` writable.
 */
enum RecountStatus recount_solve_man(const struct RecountInstance *inst,
                                     bool regular,
                                     uint32_t algo,
                                     struct RecountReport **out);

/*
 The report's decision, false for a null handle.

 # Safety
 `report` must be null or a live report handle.
 */
bool recount_report_decision(const struct RecountReport *report);

/*
 Winner's candidate index, or -1 when there is none.

 # Safety
 `report` must be null or a live report handle.
 */
int64_t recount_report_winner(const struct RecountReport *report);

/*
 The report as JSON. Release with [`recount_string_free`]. Null for a
 null handle.

 # Safety
 `report` must be null or a live report handle.
 */
char *recount_report_json(const struct RecountReport *report);

/*
 # Safety
 `report` must come from a solve call and not be used again.
 */
void recount_report_free(struct RecountReport *report);

/*
 # Safety
 `s` must come from [`recount_report_json`] and not be used again.
 */
void recount_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RECOUNT_H */
