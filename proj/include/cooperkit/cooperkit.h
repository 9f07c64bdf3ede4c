/* C interface to the cooperkit library.
 *
 * Every command returns CK_OK (holds, proved, all checks passed), CK_FAIL
 * (fails, unprovable, some check failed) or CK_ERROR (bad arguments or
 * input). The command's output and any error message stay readable through
 * ck_last_output / ck_last_error until the next command on the same session.
 *
 * `format` is "json", "text" or "dot"; NULL means "json". Formula sets are
 * comma separated; "" is the empty set.
 */
#ifndef COOPERKIT_H
#define COOPERKIT_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CK_API __declspec(dllexport)
#else
#define CK_API __attribute__((visibility("default")))
#endif

typedef struct ck_session ck_session;

enum { CK_OK = 0, CK_FAIL = 1, CK_ERROR = 2 };

CK_API ck_session* ck_session_new(void);
CK_API void ck_session_free(ck_session* s);

/* Largest number of variables exhaustive enumeration accepts (default 12). */
CK_API int ck_set_max_vars(ck_session* s, int max_vars);

CK_API int ck_parse(ck_session* s, const char* formula, const char* format);
/* logic: "sol" or "ol" */
CK_API int ck_table(ck_session* s, const char* formula, const char* logic, const char* format);
/* mode: "mc" (set of conclusions) or "sc" (exactly one conclusion) */
CK_API int ck_entails(ck_session* s, const char* logic, const char* mode, const char* premises,
                      const char* conclusions, const char* format);
/* calculus: "mc-sol", "mc-ol", "sc-vee", "sc-imp" or "hol";
 * sig: e.g. "neg,imp"; NULL means "neg,or,and,imp" */
CK_API int ck_prove(ck_session* s, const char* calculus, const char* sig, const char* gamma,
                    const char* pi, const char* format);
CK_API int ck_calculus(ck_session* s, const char* name, const char* sig, const char* format);
/* from: "mc-sol" or "mc-ol"; via: "vee" or "imp" */
CK_API int ck_translate(ck_session* s, const char* from, const char* via, const char* sig,
                        const char* format);
CK_API int ck_algebra(ck_session* s, const char* check, const char* format);

CK_API const char* ck_last_output(const ck_session* s);
CK_API const char* ck_last_error(const ck_session* s);
CK_API const char* ck_version(void);

#ifdef __cplusplus
}
#endif

#endif /* COOPERKIT_H */
