/**
 * Server-side SVG rendering: option object in, SVG file out.
 */

import { writeFileSync } from "node:fs";

import * as echarts from "echarts/core";
import { CustomChart, LineChart } from "echarts/charts";
import {
  GridComponent,
  LegendComponent,
  MarkLineComponent,
  TitleComponent,
  TooltipComponent,
} from "echarts/components";
import { SVGRenderer } from "echarts/renderers";
import type { EChartsOption } from "echarts/types/dist/echarts";

echarts.use([
  CustomChart,
  LineChart,
  GridComponent,
  LegendComponent,
  MarkLineComponent,
  TitleComponent,
  TooltipComponent,
  SVGRenderer,
]);

export interface RenderOptions {
  width?: number;
  height?: number;
}

export function renderSvg(
  option: EChartsOption,
  { width = 900, height = 520 }: RenderOptions = {},
): string {
  const chart = echarts.init(null, null, {
    renderer: "svg",
    ssr: true,
    width,
    height,
  });
  try {
    chart.setOption(option);
    return chart.renderToSVGString();
  } finally {
    // an undisposed SSR chart keeps the node event loop alive forever
    chart.dispose();
  }
}

export function renderSvgToFile(
  option: EChartsOption,
  path: string,
  renderOptions: RenderOptions = {},
): void {
  writeFileSync(path, renderSvg(option, renderOptions), "utf8");
}
