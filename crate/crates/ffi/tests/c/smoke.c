#include <math.h>
#include <stdio.h>
#include <string.h>

#include "thetazeta.h"

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond);     \
      return 1;                                                      \
    }                                                                \
  } while (0)

int main(void) {
  TzContext *ctx = NULL;
  CHECK(tz_context_new(0.0, 0, &ctx) == TZ_STATUS_OK && ctx != NULL);

  TzValue v;
  CHECK(tz_theta(ctx, 1.0, 0.0, 1.0, TZ_DERIVATIVE_VALUE, &v) == TZ_STATUS_OK);
  CHECK(fabs(v.value - 1.180340599016096) < 1e-13 && v.err < 1e-12);

  CHECK(tz_zeta(ctx, 2.0, 0.0, 1.0, TZ_DERIVATIVE_VALUE, &v) == TZ_STATUS_OK);
  CHECK(fabs(v.value - 6.0268120405) < 1e-9);

  CHECK(tz_theta(ctx, 1.0, 0.0, -1.0, TZ_DERIVATIVE_X, &v) == TZ_STATUS_INVALID_DOMAIN);
  CHECK(strlen(tz_last_error(ctx)) > 0);

  TzReduction r;
  CHECK(tz_reduce(ctx, 1.3, 1.5, &r) == TZ_STATUS_OK);
  CHECK(fabs(r.x - 0.3) < 1e-12 && r.y == 1.5 && r.word_length == 1);

  TzMinimum m;
  CHECK(tz_minimize(ctx, TZ_FUNCTIONAL_THETA, 1.0, 0.3, 1.1, &m) == TZ_STATUS_OK);
  CHECK(fabs(m.x - 0.5) < 1e-6 && fabs(m.y - sqrt(3.0) / 2.0) < 1e-6);

  double alphas[] = {1.0, 2.0};
  TzCertificates *certs = NULL;
  CHECK(tz_certify(ctx, "prop4", alphas, 2, NULL, 0, 6, 4.0, &certs) == TZ_STATUS_OK);
  CHECK(tz_certificates_len(certs) == 2 && tz_certificates_passed(certs));
  TzCertificate c;
  CHECK(tz_certificates_get(certs, 1, &c) == TZ_STATUS_OK);
  CHECK(c.target == TZ_TARGET_THETA_X && c.param == 2.0 && c.claimed_sign == -1);
  tz_certificates_free(certs);

  tz_context_free(ctx);
  printf("ok %s\n", tz_version());
  return 0;
}
