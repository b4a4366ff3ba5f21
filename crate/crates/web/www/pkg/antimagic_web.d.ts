/* tslint:disable */
/* eslint-disable */

/**
 * Builds a labeled orientation for an instance `{"p","k","legs"}`.
 * Returns `{result, trace, svg}`.
 */
export function construct(instance: string): string;

/**
 * Labels one leg with pattern `kind` ("I", "II" or "III") and reports the
 * sum at every leg vertex next to its closed form.
 */
export function leg_pattern(kind: string, k: number, a: number, s: number): string;

/**
 * Checks a result document, possibly hand-edited. Returns
 * `{ok, violation, sums, svg}`; vertices sharing a sum are highlighted.
 */
export function verify(result: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly construct: (a: number, b: number) => [number, number, number, number];
    readonly leg_pattern: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly verify: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
