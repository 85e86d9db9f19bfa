#ifndef ROWLAB_H
#define ROWLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ROWLAB_API __declspec(dllexport)
#else
#define ROWLAB_API __attribute__((visibility("default")))
#endif

typedef struct rowlab_ctx rowlab_ctx;
typedef struct rowlab_program rowlab_program;

typedef enum rowlab_status {
  ROWLAB_OK = 0,
  ROWLAB_E_PARSE = 1,
  ROWLAB_E_TYPE = 2, /* kinding, typing, subtyping, unification */
  ROWLAB_E_RANK = 3,
  ROWLAB_E_ARG = 4, /* bad handle, unknown calculus, bad option */
  ROWLAB_E_INTERNAL = 5,
  ROWLAB_E_PROPERTY = 6, /* verify ran and found counterexamples */
  ROWLAB_E_FUEL = 7,
  ROWLAB_E_UNSUPPORTED = 8
} rowlab_status;

/* Output flags. */
#define ROWLAB_JSON 0x1u
#define ROWLAB_DERIVATION 0x2u /* check: emit the derivation tree */
#define ROWLAB_EMIT_TYPE 0x4u  /* translate: also print the translated type */
#define ROWLAB_NORMALIZE 0x8u  /* translate: beta-normalise coercions */
#define ROWLAB_TRACE 0x10u     /* eval: emit every step */

ROWLAB_API rowlab_ctx* rowlab_ctx_new(void);
ROWLAB_API void rowlab_ctx_free(rowlab_ctx* ctx);
/* Message for the last failing call on ctx; empty after success. Owned by ctx. */
ROWLAB_API const char* rowlab_last_error(const rowlab_ctx* ctx);
ROWLAB_API const char* rowlab_status_name(rowlab_status s);

/* Parses a program: optional "-- env:" lines followed by one term. */
ROWLAB_API rowlab_status rowlab_parse(rowlab_ctx* ctx, const char* src, rowlab_program** out);
ROWLAB_API void rowlab_program_free(rowlab_program* p);

/* Every out string is heap allocated; release it with rowlab_string_free. */
ROWLAB_API rowlab_status rowlab_check(rowlab_ctx* ctx, const rowlab_program* p, const char* calculus, unsigned flags,
                                      char** out);
/* fuel <= 0 selects the default. */
ROWLAB_API rowlab_status rowlab_eval(rowlab_ctx* ctx, const rowlab_program* p, const char* calculus, int fuel,
                                     unsigned flags, char** out);
/* label_order: comma separated priority list for presence translations, or NULL. */
ROWLAB_API rowlab_status rowlab_translate(rowlab_ctx* ctx, const rowlab_program* p, const char* from, const char* to,
                                          const char* label_order, unsigned flags, char** out);
ROWLAB_API rowlab_status rowlab_infer(rowlab_ctx* ctx, const rowlab_program* p, const char* calculus, unsigned flags,
                                      char** out);
ROWLAB_API rowlab_status rowlab_erase(rowlab_ctx* ctx, const rowlab_program* p, unsigned flags, char** out);

/* translation and calculus may be NULL. Returns ROWLAB_E_PROPERTY when counterexamples were found;
   out then still holds the report. */
ROWLAB_API rowlab_status rowlab_verify(rowlab_ctx* ctx, const char* property, const char* translation,
                                       const char* calculus, int count, uint64_t seed, int depth, int max_size,
                                       unsigned flags, char** out);

ROWLAB_API void rowlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
