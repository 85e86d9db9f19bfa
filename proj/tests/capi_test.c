/* Exercises the C API from plain C. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "rowlab/rowlab.h"

static int failures = 0;

#define EXPECT(cond)                                                \
  do {                                                              \
    if (!(cond)) {                                                  \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                   \
    }                                                               \
  } while (0)

int main(void) {
  rowlab_ctx* ctx = rowlab_ctx_new();
  rowlab_program* p = NULL;
  char* out = NULL;

  EXPECT(rowlab_parse(ctx, "(\\x:{Name:String}. x.Name) ({Name = \"Alice\", Age = 9} :> {Name:String})", &p) == ROWLAB_OK);
  EXPECT(strlen(rowlab_last_error(ctx)) == 0);

  EXPECT(rowlab_check(ctx, p, "rec-sub", 0, &out) == ROWLAB_OK);
  EXPECT(out && strcmp(out, "String") == 0);
  rowlab_string_free(out);

  EXPECT(rowlab_eval(ctx, p, "rec-sub", 0, 0, &out) == ROWLAB_OK);
  EXPECT(out && strcmp(out, "\"Alice\"") == 0);
  rowlab_string_free(out);

  EXPECT(rowlab_eval(ctx, p, "rec-sub", 0, ROWLAB_JSON, &out) == ROWLAB_OK);
  EXPECT(out && strstr(out, "\"trace\"") != NULL);
  rowlab_string_free(out);

  EXPECT(rowlab_translate(ctx, p, "rec-sub", "rec", NULL, ROWLAB_EMIT_TYPE, &out) == ROWLAB_OK);
  EXPECT(out && strstr(out, ".Name}") != NULL);
  rowlab_string_free(out);

  EXPECT(rowlab_check(ctx, p, "rec", 0, &out) == ROWLAB_E_TYPE);
  EXPECT(out == NULL);
  EXPECT(strlen(rowlab_last_error(ctx)) > 0);

  EXPECT(rowlab_check(ctx, p, "no-such-calculus", 0, &out) == ROWLAB_E_ARG);
  EXPECT(rowlab_translate(ctx, p, "rec-sub", "rec-row", NULL, 0, &out) == ROWLAB_E_UNSUPPORTED);
  EXPECT(rowlab_infer(ctx, p, "rec-sub", 0, &out) == ROWLAB_E_ARG);
  EXPECT(rowlab_check(ctx, NULL, "rec-sub", 0, &out) == ROWLAB_E_ARG);
  EXPECT(rowlab_check(NULL, p, "rec-sub", 0, &out) == ROWLAB_E_ARG);

  EXPECT(rowlab_erase(ctx, p, 0, &out) == ROWLAB_OK);
  EXPECT(out && strcmp(out, "(\\x. x.Name) {Name = \"Alice\", Age = 9}") == 0);
  rowlab_string_free(out);
  rowlab_program_free(p);

  rowlab_program* bad = NULL;
  EXPECT(rowlab_parse(ctx, "\\x. (", &bad) == ROWLAB_E_PARSE);
  EXPECT(bad == NULL);
  EXPECT(rowlab_parse(ctx, "", &bad) == ROWLAB_E_PARSE);

  EXPECT(rowlab_parse(ctx, "\\x. x.Name", &p) == ROWLAB_OK);
  EXPECT(rowlab_infer(ctx, p, "rec-row1", 0, &out) == ROWLAB_OK);
  EXPECT(out && strstr(out, "Name:") != NULL);
  rowlab_string_free(out);
  rowlab_program_free(p);

  EXPECT(rowlab_verify(ctx, "type-preservation", "T1", NULL, 20, 3, 3, 12, ROWLAB_JSON, &out) == ROWLAB_OK);
  EXPECT(out && strstr(out, "\"pass\": true") != NULL);
  rowlab_string_free(out);
  EXPECT(rowlab_verify(ctx, "reflection", "T3", NULL, 200, 1, 3, 12, 0, &out) == ROWLAB_E_PROPERTY);
  EXPECT(out && strncmp(out, "FAIL", 4) == 0);
  rowlab_string_free(out);

  EXPECT(strcmp(rowlab_status_name(ROWLAB_E_RANK), "rank") == 0);
  rowlab_ctx_free(ctx);

  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C API: all checks passed\n");
  return failures ? 1 : 0;
}
