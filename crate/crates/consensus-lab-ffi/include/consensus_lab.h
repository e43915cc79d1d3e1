#ifndef CONSENSUS_LAB_H
#define CONSENSUS_LAB_H

/* Generated by cbindgen from consensus-lab-ffi; edit the Rust source instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Success; for decision calls, "yes".
#define CLAB_OK 0

// The decision call completed and the answer is "no".
#define CLAB_NO 1

// Malformed input: bad text, bad UTF-8, null pointer, unknown name.
#define CLAB_ERR_INVALID 2

// The request exceeds a configured size bound.
#define CLAB_ERR_LIMIT 3

// An internal invariant failed; file a bug.
#define CLAB_ERR_INTERNAL 4

// An election behind the ABI. Allocation and layout are private.
typedef struct ClabElection ClabElection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message for this thread, NUL-terminated. Owned by the
// library; valid until the next failing call on the same thread. Empty
// string when no error has occurred.
//
// # Safety
// The returned pointer must not be freed or used after a later failing
// call on the same thread.
const char *clab_last_error(void);

// Parses election text into a fresh handle and writes it to `out`.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must point to writable
// memory for one pointer. On success the caller owns the handle and must
// release it with `clab_election_free`.
int clab_election_parse(const char *text, struct ClabElection **out);

// Releases a handle from `clab_election_parse`. Null is a no-op.
//
// # Safety
// `election` must be a handle from `clab_election_parse` that has not
// already been freed.
void clab_election_free(struct ClabElection *election);

// Serializes the election in canonical text form.
//
// # Safety
// `election` must be a live handle; `out` must point to writable memory
// for one pointer. The caller frees the string with `clab_string_free`.
int clab_election_canonical_text(const struct ClabElection *election, char **out);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `text` must be a string returned by this library that has not already
// been freed.
void clab_string_free(char *text);

// Number of candidate pairs the two `>`-separated rankings order
// oppositely, written to `out`.
//
// # Safety
// `x` and `y` must be NUL-terminated strings; `out` must point to
// writable memory for one `uint64_t`.
int clab_kendall_tau(const char *x, const char *y, uint64_t *out);

// Sum of distances from the ranking to every ballot, written to `out`.
//
// # Safety
// `election` must be a live handle; `order` a NUL-terminated string;
// `out` writable memory for one `uint64_t`.
int clab_ranking_distance(const struct ClabElection *election, const char *order, uint64_t *out);

// First Kemeny consensus in candidate-name order, plus its distance.
// `max_candidates` of 0 keeps the default size bounds.
//
// # Safety
// `election` must be a live handle; `out_order` and `out_score` must
// point to writable memory. The caller frees the string with
// `clab_string_free`.
int clab_kemeny_consensus(const struct ClabElection *election,
                          uint32_t max_candidates,
                          char **out_order,
                          uint64_t *out_score);

// First Slater consensus of the election's majority digraph, plus its
// weighted agreement score. `max_candidates` of 0 keeps the defaults.
//
// # Safety
// As for `clab_kemeny_consensus`.
int clab_slater_consensus(const struct ClabElection *election,
                          uint32_t max_candidates,
                          char **out_order,
                          uint64_t *out_agreement);

// Borda consensus as a weak order; ties print as `a=b`.
//
// # Safety
// `election` must be a live handle; `out_order` must point to writable
// memory. The caller frees the string with `clab_string_free`.
int clab_borda_consensus(const struct ClabElection *election, char **out_order);

// Is the ranking a Kemeny consensus? `CLAB_OK` yes, `CLAB_NO` no.
// `max_candidates` of 0 keeps the default size bounds.
//
// # Safety
// `election` must be a live handle; `order` a NUL-terminated string.
int clab_is_kemeny_consensus(const struct ClabElection *election,
                             const char *order,
                             uint32_t max_candidates);

// Runs a named reduction's verification harness: random instances,
// decided on both sides, compared. `CLAB_OK` means every trial agreed,
// `CLAB_NO` means a disagreement was found. Passing 0 for `max_size` or
// `trials` keeps that harness's default. The number of agreeing trials
// is written to `out_agreements` when it is non-null.
//
// # Safety
// `name` must be a NUL-terminated string; `out_agreements` must be null
// or point to writable memory for one `uint64_t`.
int clab_verify_reduction(const char *name,
                          uint32_t max_size,
                          uint64_t trials,
                          uint64_t seed,
                          uint64_t *out_agreements);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONSENSUS_LAB_H */
