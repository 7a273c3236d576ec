#include <stdio.h>
#include <string.h>

#include "morlab.h"

#define CHECK(call)                                                          \
  do {                                                                       \
    enum MorlabStatus s_ = (call);                                           \
    if (s_ != MORLAB_STATUS_OK) {                                            \
      fprintf(stderr, "%s -> %d: %s\n", #call, s_, morlab_last_error_message()); \
      return 1;                                                              \
    }                                                                        \
  } while (0)

int main(void) {
  MorlabPublicKey *pub = NULL;
  MorlabPrivateKey *priv = NULL;
  MorlabCiphertext *ct = NULL;
  const uint8_t msg[] = "hi";
  uint8_t out[16];
  uintptr_t len = 0;

  CHECK(morlab_keygen_extraspecial(31, 2, 7, &pub, &priv));
  CHECK(morlab_encrypt(pub, msg, 2, 8, &ct));
  CHECK(morlab_decrypt(priv, ct, out, sizeof out, &len));
  if (len != 2 || memcmp(out, msg, 2) != 0) {
    fprintf(stderr, "roundtrip mismatch\n");
    return 1;
  }

  char *text = NULL;
  CHECK(morlab_public_key_to_text(pub, &text));
  MorlabPublicKey *again = NULL;
  CHECK(morlab_public_key_from_text(text, &again));
  morlab_string_free(text);

  if (morlab_decrypt(priv, ct, out, 1, &len) != MORLAB_STATUS_BUFFER_TOO_SMALL || len != 2) {
    fprintf(stderr, "expected BUFFER_TOO_SMALL\n");
    return 1;
  }
  if (morlab_encrypt(NULL, msg, 2, 8, &ct) != MORLAB_STATUS_NULL_ARG) {
    fprintf(stderr, "expected NULL_ARG\n");
    return 1;
  }

  morlab_public_key_free(again);
  morlab_ciphertext_free(ct);
  morlab_private_key_free(priv);
  morlab_public_key_free(pub);
  puts("ok");
  return 0;
}
