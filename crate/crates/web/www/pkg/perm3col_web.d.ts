/* tslint:disable */
/* eslint-disable */

/**
 * Result of [`solve_text`].
 */
export class Report {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    feasible: boolean;
    /**
     * Drawing of the layered graph, empty above [`DRAW_LIMIT`] vertices.
     */
    svg: string;
    /**
     * Steps of the pipeline, one per line.
     */
    trace: string;
    /**
     * Solver output in the colouring file format.
     */
    verdict: string;
}

export function checkOrdering(text: string): string;

export function generate(n: number, seed: bigint, list_density: number, precolour_rate: number, band: number): string;

export function solve(text: string): Report;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_get_report_feasible: (a: number) => number;
    readonly __wbg_get_report_svg: (a: number) => [number, number];
    readonly __wbg_get_report_trace: (a: number) => [number, number];
    readonly __wbg_get_report_verdict: (a: number) => [number, number];
    readonly __wbg_report_free: (a: number, b: number) => void;
    readonly __wbg_set_report_feasible: (a: number, b: number) => void;
    readonly __wbg_set_report_svg: (a: number, b: number, c: number) => void;
    readonly __wbg_set_report_trace: (a: number, b: number, c: number) => void;
    readonly __wbg_set_report_verdict: (a: number, b: number, c: number) => void;
    readonly checkOrdering: (a: number, b: number) => [number, number, number, number];
    readonly generate: (a: number, b: bigint, c: number, d: number, e: number) => [number, number, number, number];
    readonly solve: (a: number, b: number) => [number, number, number];
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
