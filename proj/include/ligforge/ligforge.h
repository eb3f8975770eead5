/* C interface to the ligforge library.
 *
 * Every function returns an lf_status. On failure lf_last_error() describes
 * the problem; the message stays valid until the next call on the same
 * thread. Strings returned through `char** out` are owned by the caller and
 * must be released with lf_string_free().
 */
#ifndef LIGFORGE_H
#define LIGFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LF_API __declspec(dllexport)
#else
#define LF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lf_status {
  LF_OK = 0,
  LF_ERR_ARGUMENT = 1,    /* null pointer or out-of-range argument */
  LF_ERR_IO = 2,          /* grammar file unreadable */
  LF_ERR_SYNTAX = 3,      /* malformed grammar text */
  LF_ERR_NORMAL_FORM = 4, /* grammar not in normal form and not normalizable */
  LF_ERR_TOKEN = 5,       /* input token outside the terminal alphabet */
  LF_ERR_DERIVATION = 6,  /* invalid derivation sequence */
  LF_ERR_INTERNAL = 7
} lf_status;

typedef enum lf_format { LF_FORMAT_TEXT = 0, LF_FORMAT_JSON = 1, LF_FORMAT_DOT = 2 } lf_format;

typedef struct lf_grammar lf_grammar;
typedef struct lf_parse lf_parse;

LF_API const char* lf_last_error(void);
LF_API void lf_string_free(char* s);

/* Grammars. With `relaxed` set, productions outside normal form are
 * rewritten by normalization; derivations are still reported over the
 * productions of the file. */
LF_API lf_status lf_grammar_load(const char* path, int relaxed, lf_grammar** out);
LF_API lf_status lf_grammar_parse(const char* text, int relaxed, lf_grammar** out);
/* Seeded random grammar, as used by `ligforge fuzz`. */
LF_API lf_status lf_grammar_random(uint64_t seed, int relaxed, lf_grammar** out);
LF_API void lf_grammar_free(lf_grammar* g);

/* Grammar text; `normalized` selects the normal-form grammar. */
LF_API lf_status lf_grammar_render(const lf_grammar* g, int normalized, char** out);
LF_API lf_status lf_grammar_relations(const lf_grammar* g, lf_format format, char** out);
/* Derivation grammar of the grammar itself; `reduced` drops useless symbols. */
LF_API lf_status lf_grammar_ldg(const lf_grammar* g, int reduced, lf_format format, char** out);
LF_API lf_status lf_grammar_is_empty(const lf_grammar* g, int* empty);
/* One useless relation pattern per line, e.g. "T pop+(gc) T". */
LF_API lf_status lf_grammar_static_filter(const lf_grammar* g, char** out);

/* Runs the recognizer. `chars` splits the input into characters instead of
 * whitespace-separated tokens. The parse keeps a reference to `g`, which
 * must outlive it. */
LF_API lf_status lf_parse_run(const lf_grammar* g, const char* input, int chars, int static_filter, lf_parse** out);
LF_API void lf_parse_free(lf_parse* p);

LF_API lf_status lf_parse_member(const lf_parse* p, int* member);
/* "infinite" or a decimal number. */
LF_API lf_status lf_parse_count(const lf_parse* p, char** out);
/* Shared forest; with `liged` set the forest carries the stack schemas. */
LF_API lf_status lf_parse_forest(const lf_parse* p, int liged, lf_format format, char** out);
LF_API lf_status lf_parse_relations(const lf_parse* p, lf_format format, char** out);
LF_API lf_status lf_parse_ldg(const lf_parse* p, int reduced, lf_format format, char** out);
/* Run report; LF_FORMAT_DOT is rejected. */
LF_API lf_status lf_parse_report(const lf_parse* p, int with_count, lf_format format, char** out);
/* Up to `max_count` derivations of length <= `max_len`, shortest first. Text
 * output has one line of production names per derivation, followed by its
 * tree when `trees` is set. */
LF_API lf_status lf_parse_enumerate(const lf_parse* p, size_t max_count, size_t max_len, int trees, lf_format format,
                                    char** out);

/* Tree of a derivation given as production names, most recent first. */
LF_API lf_status lf_derivation_tree(const lf_grammar* g, const char* derivation, lf_format format, char** out);

/* Brute-force reference: every tree for `input` within the bounds. */
LF_API lf_status lf_oracle(const lf_grammar* g, const char* input, int chars, size_t max_nodes, size_t max_stack,
                           lf_format format, size_t* trees, char** out);

/* CSV rows for the inputs obtained by expanding `input_template` for n in
 * from, from+step, ..., to. A template token written t^n stands for n copies
 * of t. */
LF_API lf_status lf_bench(const lf_grammar* g, const char* input_template, size_t from, size_t to, size_t step,
                          int static_filter, char** out);

/* Cross-checks `count` random grammars starting at `seed`. `failures`
 * receives the number of grammars with a failed check. */
LF_API lf_status lf_fuzz(uint64_t seed, size_t count, int relaxed, size_t max_input, size_t bound, int print_grammars,
                         size_t* failures, char** out);

#ifdef __cplusplus
}
#endif

#endif /* LIGFORGE_H */
