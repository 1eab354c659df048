#ifndef SUBLOGIC_H
#define SUBLOGIC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SublogicStatus {
  SUBLOGIC_STATUS_OK = 0,
  SUBLOGIC_STATUS_NULL_POINTER = 1,
  SUBLOGIC_STATUS_INVALID_UTF8 = 2,
  SUBLOGIC_STATUS_PARSE_ERROR = 3,
  // The proof failed to check.
  SUBLOGIC_STATUS_VIOLATION = 4,
  // A negative verdict: not valid, not provable.
  SUBLOGIC_STATUS_NEGATIVE = 5,
  // Input outside what the operation supports.
  SUBLOGIC_STATUS_UNSUPPORTED = 6,
  SUBLOGIC_STATUS_PANIC = 7,
} SublogicStatus;

// A sequent calculus with its optional parameters.
typedef struct SublogicCalculus SublogicCalculus;

// A hash-consed formula.
typedef struct SublogicFormula SublogicFormula;

// A proof together with the calculus it was written for.
typedef struct SublogicProof SublogicProof;

// Size measures of a checked proof.
typedef struct SublogicMetrics {
  uint64_t size;
  uint64_t lines;
  uint64_t node_count;
  bool tree_like;
} SublogicMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or an empty string.
// The pointer stays valid until the next call on this thread.
const char *sublogic_last_error(void);

// Library version as a static string.
const char *sublogic_version(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string returned by this library, freed once.
void sublogic_string_free(char *s);

// Parses a formula such as `p * q -> !r`.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum SublogicStatus sublogic_formula_parse(const char *text, struct SublogicFormula **out);

// Number of nodes in the formula tree, or 0 for a null handle.
//
// # Safety
// `f` must be null or a live formula handle.
uint64_t sublogic_formula_size(const struct SublogicFormula *f);

// Renders a formula; free the result with [`sublogic_string_free`].
//
// # Safety
// `f` must be a live formula handle and `out` a valid pointer.
enum SublogicStatus sublogic_formula_to_string(const struct SublogicFormula *f, char **out);

// Classical validity of the formula read with every connective as its
// Boolean counterpart.
//
// # Safety
// `f` must be a live formula handle and `out` a valid pointer.
enum SublogicStatus sublogic_formula_tautology(const struct SublogicFormula *f, bool *out);

// # Safety
// `f` must be null or a handle from this library, freed once.
void sublogic_formula_free(struct SublogicFormula *f);

// Parses a calculus name such as `FL_e`, `LK-` or `iG_D(FL_e; D=d; N=n)`.
//
// # Safety
// `text` must be a nul-terminated string and `out` a valid pointer.
enum SublogicStatus sublogic_calculus_parse(const char *text, struct SublogicCalculus **out);

// # Safety
// `c` must be null or a handle from this library, freed once.
void sublogic_calculus_free(struct SublogicCalculus *c);

// Reads a proof in the JSON exchange format.
//
// # Safety
// `json` must be a nul-terminated string and `out` a valid pointer.
enum SublogicStatus sublogic_proof_from_json(const char *json, struct SublogicProof **out);

// Writes a proof in the JSON exchange format; free the result with
// [`sublogic_string_free`].
//
// # Safety
// `p` must be a live proof handle and `out` a valid pointer.
enum SublogicStatus sublogic_proof_to_json(const struct SublogicProof *p, char **out);

// Renders the end sequent; free the result with [`sublogic_string_free`].
//
// # Safety
// `p` must be a live proof handle and `out` a valid pointer.
enum SublogicStatus sublogic_proof_conclusion(const struct SublogicProof *p, char **out);

// Checks a proof, against `calculus` when given and against the calculus
// named in the proof otherwise. Fills `metrics` when it is not null.
//
// # Safety
// `p` must be a live proof handle; `calculus` and `metrics` may be null.
enum SublogicStatus sublogic_proof_check(const struct SublogicProof *p,
                                         const struct SublogicCalculus *calculus,
                                         struct SublogicMetrics *metrics);

// Proves an implicational Horn sequent in `LK_u` by unit propagation.
// Returns [`SublogicStatus::Negative`] when the sequent is not valid.
//
// # Safety
// `sequent` must be a nul-terminated string and `out` a valid pointer.
enum SublogicStatus sublogic_horn_prove(const char *sequent, struct SublogicProof **out);

// # Safety
// `p` must be null or a handle from this library, freed once.
void sublogic_proof_free(struct SublogicProof *p);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBLOGIC_H */
