#include "horocp/horocp.h"

#include <new>
#include <string>

#include "horocp/commands.hpp"
#include "horocp/error.hpp"
#include "horocp/json_io.hpp"
#include "horocp/length.hpp"

struct horocp_context {
  horocp::Config config;
  std::string output;
  std::string error;
};

struct horocp_length {
  horocp::LengthFunction length;
  std::string error;
};

namespace {

horocp_status to_status(horocp::ErrorCode c) { return static_cast<horocp_status>(static_cast<int>(c)); }

template <class F>
horocp_status guarded(std::string* error, F&& f) {
  try {
    f();
    if (error) error->clear();
    return HOROCP_OK;
  } catch (const horocp::Error& e) {
    if (error) *error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    if (error) *error = "out of memory";
    return HOROCP_ERR_CAP_EXCEEDED;
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return HOROCP_ERR_INTERNAL;
  } catch (...) {
    if (error) *error = "unknown failure";
    return HOROCP_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* horocp_version(void) { return "0.1.0"; }

const char* horocp_status_string(horocp_status status) {
  switch (status) {
    case HOROCP_OK: return "ok";
    case HOROCP_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HOROCP_ERR_GROUP_MISMATCH: return "group mismatch";
    case HOROCP_ERR_CAP_EXCEEDED: return "cap exceeded";
    case HOROCP_ERR_OUT_OF_BALL: return "out of ball";
    case HOROCP_ERR_DEGENERATE: return "degenerate";
    case HOROCP_ERR_NOT_CONVERGED: return "not converged";
    case HOROCP_ERR_UNDECIDABLE: return "undecidable";
    case HOROCP_ERR_NULL_HANDLE: return "null handle";
    case HOROCP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

horocp_status horocp_context_create(horocp_context** out) {
  if (!out) return HOROCP_ERR_NULL_HANDLE;
  *out = new (std::nothrow) horocp_context();
  return *out ? HOROCP_OK : HOROCP_ERR_INTERNAL;
}

void horocp_context_destroy(horocp_context* ctx) { delete ctx; }

horocp_status horocp_context_set(horocp_context* ctx, const char* key, const char* value) {
  if (!ctx) return HOROCP_ERR_NULL_HANDLE;
  if (!key || !value) return HOROCP_ERR_INVALID_ARGUMENT;
  return guarded(&ctx->error, [&] { ctx->config[key] = value; });
}

horocp_status horocp_context_clear(horocp_context* ctx) {
  if (!ctx) return HOROCP_ERR_NULL_HANDLE;
  ctx->config.clear();
  return HOROCP_OK;
}

horocp_status horocp_context_run(horocp_context* ctx, const char* command, int* exit_code) {
  if (!ctx) return HOROCP_ERR_NULL_HANDLE;
  if (!command || !exit_code) return HOROCP_ERR_INVALID_ARGUMENT;
  return guarded(&ctx->error, [&] {
    const auto oc = horocp::run_command(command, ctx->config);
    ctx->output = horocp::dump_json(oc.document) + "\n";
    *exit_code = oc.exit_code;
  });
}

const char* horocp_context_output(const horocp_context* ctx) { return ctx ? ctx->output.c_str() : ""; }

const char* horocp_context_last_error(const horocp_context* ctx) {
  return ctx ? ctx->error.c_str() : "null handle";
}

horocp_status horocp_context_load_config(horocp_context* ctx, const char* text) {
  if (!ctx) return HOROCP_ERR_NULL_HANDLE;
  if (!text) return HOROCP_ERR_INVALID_ARGUMENT;
  return guarded(&ctx->error, [&] {
    for (const auto& [k, v] : horocp::parse_config_text(text)) ctx->config[k] = v;
  });
}

size_t horocp_command_count(void) { return horocp::command_table().size(); }

const char* horocp_command_name(size_t i) {
  const auto& t = horocp::command_table();
  return i < t.size() ? t[i].name.c_str() : nullptr;
}

const char* horocp_command_help(size_t i) {
  const auto& t = horocp::command_table();
  return i < t.size() ? t[i].help.c_str() : nullptr;
}

size_t horocp_command_option_count(size_t i) {
  const auto& t = horocp::command_table();
  return i < t.size() ? t[i].options.size() : 0;
}

const char* horocp_command_option(size_t i, size_t j, int field) {
  const auto& t = horocp::command_table();
  if (i >= t.size() || j >= t[i].options.size()) return nullptr;
  const auto& o = t[i].options[j];
  switch (field) {
    case 0: return o.key.c_str();
    case 1: return o.fallback.c_str();
    case 2: return o.help.c_str();
    default: return nullptr;
  }
}

horocp_status horocp_length_create(const char* group, const char* gens, const char* kind,
                                   horocp_length** out) {
  if (!out) return HOROCP_ERR_NULL_HANDLE;
  *out = nullptr;
  if (!group || !gens || !kind) return HOROCP_ERR_INVALID_ARGUMENT;
  return guarded(nullptr, [&] {
    const auto g = horocp::with_named_generators(horocp::parse_group(group), gens);
    const std::string k = kind;
    auto len = k == "word" ? horocp::LengthFunction::word_length(g)
                           : horocp::LengthFunction::norm_restriction(g, horocp::NormSpec::parse(k));
    *out = new horocp_length{std::move(len), {}};
  });
}

void horocp_length_destroy(horocp_length* len) { delete len; }

horocp_status horocp_length_eval(horocp_length* len, const int64_t* coords, size_t n, double* out) {
  if (!len) return HOROCP_ERR_NULL_HANDLE;
  if ((!coords && n > 0) || !out) return HOROCP_ERR_INVALID_ARGUMENT;
  return guarded(&len->error, [&] {
    const auto e = len->length.group().element(std::vector<std::int64_t>(coords, coords + n));
    *out = len->length(e);
  });
}

horocp_status horocp_length_ball_size(horocp_length* len, double radius, size_t* out) {
  if (!len) return HOROCP_ERR_NULL_HANDLE;
  if (!out) return HOROCP_ERR_INVALID_ARGUMENT;
  return guarded(&len->error, [&] { *out = len->length.ball(radius)->size(); });
}

const char* horocp_length_last_error(const horocp_length* len) {
  return len ? len->error.c_str() : "null handle";
}

}  // extern "C"
