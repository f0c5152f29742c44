#ifndef RUMORTRACK_RUMORTRACK_H
#define RUMORTRACK_RUMORTRACK_H

#include <stddef.h>
#include <stdint.h>

#if defined(RT_BUILDING_LIBRARY)
#define RT_API __attribute__((visibility("default")))
#else
#define RT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rt_status {
    RT_OK = 0,
    RT_ERR_IO = 1,
    RT_ERR_PARSE = 2,
    RT_ERR_CONFIG = 3,
    RT_ERR_INVALID_ARGUMENT = 4,
    RT_ERR_NOT_FOUND = 5,
    RT_ERR_STATE = 6,
    RT_ERR_INTERNAL = 7
} rt_status;

typedef struct rt_config rt_config;
typedef struct rt_corpus rt_corpus;
typedef struct rt_task rt_task;
typedef struct rt_dataset rt_dataset;
typedef struct rt_model rt_model;
typedef struct rt_service rt_service;

/* Message of the last failed call on this thread; "" after success. */
RT_API const char* rt_last_error(void);
/* Byte offset of the last query syntax error on this thread, or -1. */
RT_API long rt_last_error_position(void);
RT_API const char* rt_status_name(rt_status s);
RT_API const char* rt_version(void);
/* Child seed for a labelled sub-stream, as used inside the pipeline. */
RT_API uint64_t rt_derive_seed(uint64_t seed, const char* label);
/* Every char** out parameter is allocated by the library. */
RT_API void rt_string_free(char* s);

/* config */
RT_API rt_status rt_config_load(const char* path, rt_config** out);
RT_API void rt_config_free(rt_config* c);
/* {run_id, seed, config_hash, data_dir, language, rumors:[{id, description, query, provenance}],
    annotation:{cap, head, config:{...}}} */
RT_API rt_status rt_config_info(const rt_config* c, char** json);

/* Full pipeline into <data_dir>/<run_id>; data_dir may be NULL. Returns report.json text. */
RT_API rt_status rt_run(const rt_config* c, const char* data_dir, char** report_json);

/* text utilities */
RT_API rt_status rt_normalize(const char* text, char** out);
/* JSON array of index tokens of a canonical text. */
RT_API rt_status rt_tokenize(const char* canonical_text, char** json);
/* {canonical, tree}; syntax errors set rt_last_error_position. */
RT_API rt_status rt_query_parse(const char* query, char** json);

/* corpus */
/* field_names_json: optional {"canonical": "source"} object, may be NULL. */
RT_API rt_status rt_corpus_ingest(const char* path, const char* field_names_json, const char* language, rt_corpus** out);
RT_API rt_status rt_corpus_from_config(const rt_config* c, rt_corpus** out);
RT_API rt_status rt_corpus_from_snapshot(const char* path, const char* language, rt_corpus** out);
RT_API void rt_corpus_free(rt_corpus* c);
/* {accepted, rejected, language_messages, duplicate_groups} */
RT_API rt_status rt_corpus_summary(const rt_corpus* c, char** json);
/* Writes snapshot.jsonl, rejections.tsv, normalized.tsv and index.txt into dir. */
RT_API rt_status rt_corpus_write(const rt_corpus* c, const char* dir);
/* Over all accepted messages. Gazetteer paths may both be NULL (no geolocation). */
RT_API rt_status rt_corpus_stats(const rt_corpus* c, const char* places, const char* boxes, char** stats_json);
RT_API rt_status rt_corpus_geolocate(const rt_corpus* c, const char* places, const char* boxes, char** geo_tsv);
/* {query, ids, count}; top_k 0 returns all ids in corpus order. */
RT_API rt_status rt_corpus_query(const rt_corpus* c, const char* query, size_t top_k, char** json);
/* JSON array of candidate ids for the query's unique hits. */
RT_API rt_status rt_corpus_sample(const rt_corpus* c, const char* query, size_t cap, size_t head, uint64_t seed,
                                  char** json);

/* annotation */
/* {task_id, rumor_id, instruction, candidates:[...], gold:[{message_id, label}], config:{...}} */
RT_API rt_status rt_task_create(const char* definition_json, rt_task** out);
/* Rebuilds a task from its event log file. */
RT_API rt_status rt_task_load(const char* path, rt_task** out);
RT_API rt_status rt_task_save(const rt_task* t, const char* path);
RT_API void rt_task_free(rt_task* t);
/* *message_id is NULL when nothing is left for the worker. */
RT_API rt_status rt_task_next(const rt_task* t, const char* worker, char** message_id);
/* label: rumor | clarification | other. token may be NULL. */
RT_API rt_status rt_task_submit(rt_task* t, const char* worker, const char* message_id, const char* label,
                                const char* token, char** result_json);
RT_API rt_status rt_task_close(rt_task* t);
RT_API rt_status rt_task_import(rt_task* t, const char* judgments_path, char** report_json);
RT_API rt_status rt_task_export(const rt_task* t, const rt_corpus* c, char** tsv);
RT_API rt_status rt_task_resolutions(const rt_task* t, char** tsv);
RT_API rt_status rt_task_stats(const rt_task* t, char** json);
/* labels.tsv text and a summary {unique, propagated, ...}. */
RT_API rt_status rt_task_propagate(const rt_task* t, const rt_corpus* c, char** labels_tsv, char** summary_json);

/* lexicon and features */
RT_API rt_status rt_lexicon_build(const char* medical_path, const char* general_path, size_t keep,
                                  int truncate_general, char** tsv);
/* ids_path: TSV message_id[, label[, topic]]. lexicon_path: lexicon TSV. Returns matrix CSV. */
RT_API rt_status rt_features_extract(const rt_config* c, const char* ids_path, const char* lexicon_path, char** csv);

/* learn */
RT_API rt_status rt_dataset_load(const char* matrix_csv_path, rt_dataset** out);
RT_API void rt_dataset_free(rt_dataset* d);
/* {rows, columns, rumor, non_rumor, names, topics} */
RT_API rt_status rt_dataset_info(const rt_dataset* d, char** json);
/* options_json (may be NULL): {algorithm, features:[names], folds, seed, target, inner_folds, threads,
   forest_size, min_leaf, k_features, max_depth, bootstrap, variance_floor, k} */
RT_API rt_status rt_learn_ig(const rt_dataset* d, const char* options_json, char** json);
RT_API rt_status rt_learn_gbe(const rt_dataset* d, const char* options_json, char** json);
RT_API rt_status rt_learn_cv(const rt_dataset* d, const char* options_json, char** json);
RT_API rt_status rt_learn_loto(const rt_dataset* d, const char* options_json, char** json);
RT_API rt_status rt_model_train(const rt_dataset* d, const char* options_json, rt_model** out);
RT_API rt_status rt_model_load(const char* path, rt_model** out);
RT_API rt_status rt_model_save(const rt_model* m, const char* path);
RT_API void rt_model_free(rt_model* m);
/* [{message_id, rumor_probability, predicted}] for every row of d. */
RT_API rt_status rt_model_predict(const rt_model* m, const rt_dataset* d, char** json);

/* timeline */
/* events_path: TSV rumor_id, label, created_at. start/end YYYY-MM-DD or NULL for the events' span.
   Writes <R>.csv, <R>.svg and correlations.csv into out_dir; returns the correlation rows as JSON. */
RT_API rt_status rt_timeline_build(const char* events_path, const char* start, const char* end, const char* out_dir,
                                   char** json);
/* *defined is 0 when r is absent (constant series or length < 2). */
RT_API rt_status rt_pearson(const double* a, const double* b, size_t n, double* r, int* defined);

/* service */
RT_API rt_status rt_service_create(const rt_config* c, const char* data_dir, rt_service** out);
RT_API void rt_service_free(rt_service* s);
/* query_string: "a=1&b=2" or NULL. */
RT_API rt_status rt_service_request(rt_service* s, const char* method, const char* path, const char* query_string,
                                    const char* body, int* http_status, char** response_body);
/* Blocks until rt_service_stop. port 0 picks a free port. */
RT_API rt_status rt_service_listen(rt_service* s, const char* host, int port);
RT_API rt_status rt_service_stop(rt_service* s);
RT_API int rt_service_port(const rt_service* s);

#ifdef __cplusplus
}
#endif

#endif
