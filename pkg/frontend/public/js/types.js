/**
 * Wire types for the partitioning session API.
 *
 * Field names mirror the JSON exactly: report payloads are snake_case,
 * envelope fields are camelCase. Nothing here is renamed, so a value seen
 * on screen can be grepped verbatim in a response body.
 */
export {};
