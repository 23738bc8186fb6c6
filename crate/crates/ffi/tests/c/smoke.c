#include <stdio.h>
#include <string.h>

#include "diffalg.h"

#define CHECK(cond)                                                        \
  do {                                                                     \
    if (!(cond)) {                                                         \
      fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
      return 1;                                                            \
    }                                                                      \
  } while (0)

int main(void) {
  DiffalgTerm *t = NULL;
  char *bits = NULL, *vars = NULL, *text = NULL;

  CHECK(diffalg_term_parse("a-b", &t) == DIFFALG_STATUS_OK);
  CHECK(diffalg_term_truth_table(t, &bits, &vars) == DIFFALG_STATUS_OK);
  CHECK(strcmp(bits, "0100") == 0);
  CHECK(strcmp(vars, "a,b") == 0);
  diffalg_string_free(bits);
  diffalg_string_free(vars);
  diffalg_term_free(t);

  CHECK(diffalg_term_parse("a-", &t) == DIFFALG_STATUS_PARSE_ERROR);
  CHECK(diffalg_last_error() != NULL);

  DiffalgRelation *r = NULL, *d = NULL;
  CHECK(diffalg_relation_parse("(a+b)*c = c - a*b", &r) == DIFFALG_STATUS_OK);
  CHECK(diffalg_relation_derive(r, &d) == DIFFALG_STATUS_OK);
  CHECK(diffalg_relation_render(d, &text) == DIFFALG_STATUS_OK);
  CHECK(strcmp(text, "c <= a+b /\\ c <= a'+b'") == 0);
  diffalg_string_free(text);
  diffalg_relation_free(d);
  diffalg_relation_free(r);

  char *holding = NULL, *failing = NULL;
  CHECK(diffalg_numeric_matrix("mod", 1000, 0, &holding, &failing) == DIFFALG_STATUS_OK);
  CHECK(strcmp(failing, "iv") == 0);
  diffalg_string_free(holding);
  diffalg_string_free(failing);

  puts("ok");
  return 0;
}
