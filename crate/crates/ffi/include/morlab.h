#ifndef MORLAB_H
#define MORLAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MorlabStatus {
  MORLAB_STATUS_OK = 0,
  MORLAB_STATUS_NULL_ARG = 1,
  MORLAB_STATUS_INVALID_ARG = 2,
  MORLAB_STATUS_FORMAT = 3,
  MORLAB_STATUS_INVARIANT = 4,
  MORLAB_STATUS_NO_SOLUTION = 5,
  MORLAB_STATUS_CAP_EXCEEDED = 6,
  MORLAB_STATUS_BUFFER_TOO_SMALL = 7,
  MORLAB_STATUS_INTERNAL = 8,
} MorlabStatus;

typedef struct MorlabCiphertext MorlabCiphertext;

typedef struct MorlabPrivateKey MorlabPrivateKey;

typedef struct MorlabPublicKey MorlabPublicKey;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Generates a key pair on the extra-special group of order `p^(2n+1)`.
 The same `seed` always yields the same keys.
 */
enum MorlabStatus morlab_keygen_extraspecial(uint64_t p,
                                             uint32_t n,
                                             uint64_t seed,
                                             struct MorlabPublicKey **out_public,
                                             struct MorlabPrivateKey **out_private);

/*
 Generates a key pair on `(Z/p)^d`.
 */
enum MorlabStatus morlab_keygen_elementary(uint64_t p,
                                           uint32_t d,
                                           uint64_t seed,
                                           struct MorlabPublicKey **out_public,
                                           struct MorlabPrivateKey **out_private);

/*
 Copies the public half of `private_key`.
 */
enum MorlabStatus morlab_private_key_public(const struct MorlabPrivateKey *private_key,
                                            struct MorlabPublicKey **out_public);

/*
 Encrypts `len` bytes read as a big-endian integer below the group order.
 */
enum MorlabStatus morlab_encrypt(const struct MorlabPublicKey *public_key,
                                 const uint8_t *message,
                                 uintptr_t len,
                                 uint64_t seed,
                                 struct MorlabCiphertext **out_ciphertext);

/*
 Decrypts into `buffer`. `*out_len` always receives the plaintext length;
 if it exceeds `capacity` nothing is written and
 `MORLAB_STATUS_BUFFER_TOO_SMALL` is returned.
 */
enum MorlabStatus morlab_decrypt(const struct MorlabPrivateKey *private_key,
                                 const struct MorlabCiphertext *ciphertext,
                                 uint8_t *buffer,
                                 uintptr_t capacity,
                                 uintptr_t *out_len);

/*
 Recovers `m mod p` from a public key whose automorphism is central.
 Other keys give `MORLAB_STATUS_NO_SOLUTION`.
 */
enum MorlabStatus morlab_central_attack(const struct MorlabPublicKey *public_key,
                                        uint64_t *out_residue,
                                        uint64_t *out_modulus);

enum MorlabStatus morlab_public_key_to_text(const struct MorlabPublicKey *public_key,
                                            char **out_text);

enum MorlabStatus morlab_private_key_to_text(const struct MorlabPrivateKey *private_key,
                                             char **out_text);

enum MorlabStatus morlab_ciphertext_to_text(const struct MorlabCiphertext *ciphertext,
                                            char **out_text);

enum MorlabStatus morlab_public_key_from_text(const char *input,
                                              struct MorlabPublicKey **out_public);

enum MorlabStatus morlab_private_key_from_text(const char *input,
                                               struct MorlabPrivateKey **out_private);

enum MorlabStatus morlab_ciphertext_from_text(const char *input,
                                              struct MorlabCiphertext **out_ciphertext);

/*
 Message describing the most recent failure on this thread, or an empty
 string. Valid until the next morlab call on the same thread.
 */
const char *morlab_last_error_message(void);

/*
 # Safety
 `text` must be null or a string returned by this library, freed once.
 */
void morlab_string_free(char *text);

/*
 # Safety
 `key` must be null or a handle returned by this library, freed once.
 */
void morlab_public_key_free(struct MorlabPublicKey *key);

/*
 # Safety
 `key` must be null or a handle returned by this library, freed once.
 */
void morlab_private_key_free(struct MorlabPrivateKey *key);

/*
 # Safety
 `ciphertext` must be null or a handle returned by this library, freed once.
 */
void morlab_ciphertext_free(struct MorlabCiphertext *ciphertext);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MORLAB_H */
