// Minimal HTTP annotation service: GET /health and POST /tag. Responses for
// identical bodies are byte-identical to the tag subcommand's file output.
#ifndef CLASSICA_SERVICE_HPP
#define CLASSICA_SERVICE_HPP

#include <memory>
#include <string>

#include "classica/pipeline.hpp"

namespace classica {

class AnnotationService {
public:
  explicit AnnotationService(const AnnotationPipeline& pipeline,
                             size_t max_body_bytes = 1 << 20);
  ~AnnotationService();

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  // Blocking; returns false if the address cannot be bound.
  bool listen(const std::string& host, int port);

  // Test support: bind to an ephemeral port, then serve from a thread.
  int bind_any(const std::string& host);  // returns the port, -1 on failure
  bool listen_after_bind();               // blocking
  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace classica

#endif
