/* Prints the first members of the family and checks x^4 + y^4 - 8 = z^2. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "nearmiss.h"

static int fail(const char *what, NmStatus st) {
  const char *msg = nm_last_error();
  fprintf(stderr, "%s: status %d: %s\n", what, (int)st, msg ? msg : "");
  return 1;
}

int main(int argc, char **argv) {
  unsigned long count = argc > 1 ? strtoul(argv[1], NULL, 10) : 4;
  NmTriplets *t = NULL;
  NmStatus st = nm_triplets_generate(count, &t);
  if (st != NM_STATUS_OK) return fail("generate", st);

  for (size_t i = 0; i < nm_triplets_len(t); i++) {
    char *x, *y, *z, *r;
    nm_triplets_get(t, i, NM_TRIPLET_FIELD_X, &x);
    nm_triplets_get(t, i, NM_TRIPLET_FIELD_Y, &y);
    nm_triplets_get(t, i, NM_TRIPLET_FIELD_Z, &z);
    st = nm_residual(x, y, z, &r);
    if (st != NM_STATUS_OK) return fail("residual", st);
    printf("%zu\t%s\t%s\t%s\tresidual=%s\n", i, x, y, z, r);
    nm_string_free(x);
    nm_string_free(y);
    nm_string_free(z);
    nm_string_free(r);
  }
  nm_triplets_free(t);

  char *json = NULL;
  bool ok = false;
  st = nm_identities_report(&json, &ok);
  if (st != NM_STATUS_OK) return fail("identities", st);
  printf("identities %s\n", ok ? "hold" : "FAIL");
  nm_string_free(json);
  return ok ? 0 : 1;
}
